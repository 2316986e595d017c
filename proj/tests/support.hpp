#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "collective/correlation.hpp"
#include "oracle/oracle.hpp"

namespace testing {

inline std::vector<std::string> labels(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("X" + std::to_string(i));
  return out;
}

inline collective::CorrelationMatrix from_oracle(const oracle::Matrix& m) {
  collective::CorrelationMatrix c;
  c.labels = labels(m.size());
  const auto n = static_cast<Eigen::Index>(m.size());
  c.entries.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) c.entries(i, j) = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return c;
}

inline oracle::Matrix to_oracle(const Eigen::MatrixXd& m) {
  oracle::Matrix out(static_cast<std::size_t>(m.rows()), std::vector<double>(static_cast<std::size_t>(m.cols())));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m(i, j);
  return out;
}

/// C_ij = rho for i != j, 1 on the diagonal.
inline collective::CorrelationMatrix equicorrelated(std::size_t n, double rho) {
  collective::CorrelationMatrix c;
  c.labels = labels(n);
  const auto m = static_cast<Eigen::Index>(n);
  c.entries = Eigen::MatrixXd::Constant(m, m, rho);
  c.entries.diagonal().setOnes();
  return c;
}

inline collective::CorrelationMatrix identity(std::size_t n) { return equicorrelated(n, 0.0); }

}  // namespace testing
