#include "collective/nullmodel.hpp"

#include <utility>

#include "collective/error.hpp"

namespace collective {

std::vector<double> upper_offdiagonal(const Eigen::MatrixXd& m) {
  const Eigen::Index n = m.rows();
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) out.push_back(m(i, j));
  return out;
}

CorrelationMatrix shuffle_once(const CorrelationMatrix& c, Rng& rng) {
  const Eigen::Index n = c.size();
  std::vector<double> values = upper_offdiagonal(c.entries);
  for (std::size_t i = values.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i));
    std::swap(values[i - 1], values[j]);
  }
  CorrelationMatrix out;
  out.labels = c.labels;
  out.entries.resize(n, n);
  std::size_t k = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    out.entries(i, i) = 1.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      out.entries(i, j) = values[k];
      out.entries(j, i) = values[k];
      ++k;
    }
  }
  return out;
}

CorrelationMatrix shuffle_member(const CorrelationMatrix& c, std::uint64_t seed, std::uint64_t index) {
  Rng rng(seed, index);
  return shuffle_once(c, rng);
}

ShuffleEnsemble make_ensemble(const CorrelationMatrix& c, std::size_t count, std::uint64_t seed) {
  if (count < 1) throw InputError("make_ensemble: ensemble size must be >= 1");
  ShuffleEnsemble ens;
  ens.base = c;
  ens.seed = seed;
  ens.matrices.reserve(count);
  for (std::size_t m = 0; m < count; ++m) ens.matrices.push_back(shuffle_member(c, seed, m));
  return ens;
}

}  // namespace collective
