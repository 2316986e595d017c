#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace collective {

/// Name recorded in reports so a run can be replayed bit-for-bit.
inline constexpr std::string_view kRngAlgorithm =
    "mt19937_64; stream seed = splitmix64(seed ^ splitmix64(stream)); "
    "uniform = top 53 bits; bounded = rejection; normal = Marsaglia polar";

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Deterministic generator for one (seed, stream) pair.
///
/// Distributions are implemented here rather than through <random>'s
/// distribution classes, whose output sequences differ between standard
/// library implementations.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1).
  double uniform();

  /// Uniform integer on [0, bound); bound must be > 0.
  std::uint64_t below(std::uint64_t bound);

  double normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace collective
