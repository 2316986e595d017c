#pragma once

#include <cstdint>
#include <vector>

#include "collective/correlation.hpp"
#include "collective/rng.hpp"

namespace collective {

/// Shuffled counterparts of one correlation matrix. Member m is drawn from
/// Rng(seed, m), so any member can be regenerated alone.
struct ShuffleEnsemble {
  CorrelationMatrix base;
  std::uint64_t seed = 0;
  std::vector<CorrelationMatrix> matrices;

  std::size_t count() const { return matrices.size(); }
};

/// Upper-triangle off-diagonal entries in row-major order (i < j).
std::vector<double> upper_offdiagonal(const Eigen::MatrixXd& m);

/// Permutes the N(N-1)/2 upper off-diagonal entries with one Fisher-Yates
/// pass and mirrors them to the lower triangle. Diagonal stays 1. The
/// result is symmetric but in general not positive semi-definite.
CorrelationMatrix shuffle_once(const CorrelationMatrix& c, Rng& rng);

/// Member `index` of the ensemble seeded by `seed`.
CorrelationMatrix shuffle_member(const CorrelationMatrix& c, std::uint64_t seed, std::uint64_t index);

ShuffleEnsemble make_ensemble(const CorrelationMatrix& c, std::size_t count, std::uint64_t seed);

}  // namespace collective
