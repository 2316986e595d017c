#include "collective/synth.hpp"

#include <cmath>
#include <cstdio>

#include "collective/error.hpp"
#include "collective/rng.hpp"

namespace collective {

namespace {

void check_gamma(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw InputError("synth: factor loading must lie in [0, 1]");
  }
}

std::vector<std::string> make_labels(int n) {
  const int width = static_cast<int>(std::to_string(n).size());
  std::vector<std::string> labels;
  for (int i = 1; i <= n; ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "A%0*d", width, i);
    labels.emplace_back(buf);
  }
  return labels;
}

ReturnPanel simulate(int length, const std::vector<FactorBlock>& blocks, std::uint64_t seed) {
  if (length < 2) throw InputError("synth: need at least 2 returns per asset");
  int n = 0;
  for (const auto& b : blocks) {
    if (b.size < 1) throw InputError("synth: block sizes must be positive");
    check_gamma(b.gamma);
    n += b.size;
  }
  if (n < 2) throw InputError("synth: need at least 2 assets");

  Rng rng(seed, 0);
  RawReturns raw;
  raw.labels = make_labels(n);
  raw.values.resize(n, length);
  Eigen::RowVectorXd factor(length);
  int row = 0;
  for (const auto& b : blocks) {
    const double load = std::sqrt(b.gamma);
    const double idio = std::sqrt(1.0 - b.gamma);
    for (int t = 0; t < length; ++t) factor(t) = rng.normal();
    for (int i = 0; i < b.size; ++i, ++row) {
      for (int t = 0; t < length; ++t) raw.values(row, t) = load * factor(t) + idio * rng.normal();
    }
  }
  return normalize(raw);
}

}  // namespace

ReturnPanel generate_one_factor(const FactorSpec& spec) {
  if (spec.blocks) throw InputError("synth: one-factor model takes no blocks");
  check_gamma(spec.gamma);
  return simulate(spec.length, {{spec.assets, spec.gamma}}, spec.seed);
}

ReturnPanel generate_blocks(const FactorSpec& spec) {
  if (!spec.blocks || spec.blocks->empty()) throw InputError("synth: block model needs blocks");
  int total = 0;
  for (const auto& b : *spec.blocks) total += b.size;
  if (total != spec.assets) {
    throw InputError("synth: block sizes sum to " + std::to_string(total) + " but N = " +
                     std::to_string(spec.assets));
  }
  return simulate(spec.length, *spec.blocks, spec.seed);
}

ReturnPanel generate(const FactorSpec& spec) {
  return spec.blocks ? generate_blocks(spec) : generate_one_factor(spec);
}

PricePanel to_prices(const ReturnPanel& rp, double volatility, Date start) {
  const Eigen::Index n = rp.assets();
  const Eigen::Index t = rp.length();
  PricePanel panel;
  panel.labels = rp.labels;
  panel.prices.resize(n, t + 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    double logp = std::log(100.0);
    panel.prices(i, 0) = 100.0;
    for (Eigen::Index s = 0; s < t; ++s) {
      logp += volatility * rp.returns(i, s);
      panel.prices(i, s + 1) = std::exp(logp);
    }
  }
  std::chrono::sys_days day{start};
  for (Eigen::Index s = 0; s <= t; ++s) {
    panel.dates.emplace_back(day);
    day += std::chrono::days{1};
  }
  return panel;
}

}  // namespace collective
