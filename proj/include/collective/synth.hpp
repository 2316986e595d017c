#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "collective/ingest.hpp"
#include "collective/returns.hpp"

namespace collective {

struct FactorBlock {
  int size = 0;
  double gamma = 0.0;  ///< loading of the block's common factor, in [0, 1]
};

/// Synthetic market description. Without blocks every asset loads on one
/// common factor with weight gamma; with blocks each block has its own
/// independent factor and `gamma` is ignored.
struct FactorSpec {
  int assets = 0;
  int length = 0;  ///< number of returns T
  double gamma = 0.0;
  std::optional<std::vector<FactorBlock>> blocks;
  std::uint64_t seed = 0;
};

/// r_i(t) = sqrt(gamma) f(t) + sqrt(1 - gamma) e_i(t) with standard
/// Gaussian f and e, normalized per asset. All draws come from one stream:
/// f for all t, then e row by row.
ReturnPanel generate_one_factor(const FactorSpec& spec);

/// Independent one-factor blocks stacked in order; each block draws its
/// factor then its rows, so a single block covering all assets reproduces
/// generate_one_factor.
ReturnPanel generate_blocks(const FactorSpec& spec);

/// Dispatches on whether spec.blocks is set.
ReturnPanel generate(const FactorSpec& spec);

/// Integrates returns into a price path P(0) = 100,
/// P(t+1) = P(t) exp(volatility * r(t)) on consecutive calendar days from
/// `start`. Renormalizing the log returns of the result recovers `rp`.
PricePanel to_prices(const ReturnPanel& rp, double volatility = 0.01,
                     Date start = Date{std::chrono::year{2000}, std::chrono::January,
                                       std::chrono::day{3}});

}  // namespace collective
