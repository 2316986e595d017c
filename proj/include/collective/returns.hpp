#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "collective/ingest.hpp"

namespace collective {

/// Raw log returns, N x T, row i belongs to labels[i].
struct RawReturns {
  std::vector<std::string> labels;
  Eigen::MatrixXd values;
};

/// Normalized returns: every row has mean 0 and population standard deviation 1.
/// The raw return is recoverable as stddev[i] * returns(i, t) + mean[i].
struct ReturnPanel {
  std::vector<std::string> labels;
  Eigen::MatrixXd returns;
  Eigen::VectorXd mean;
  Eigen::VectorXd stddev;

  Eigen::Index assets() const { return returns.rows(); }
  Eigen::Index length() const { return returns.cols(); }
};

/// ln P(t+1) - ln P(t) between consecutive panel dates.
RawReturns log_returns(const PricePanel& panel);

/// Subtracts each row's time average and divides by its population
/// (divide-by-T) standard deviation. Throws InputError naming the asset for
/// a constant row.
ReturnPanel normalize(const RawReturns& raw);

}  // namespace collective
