#include "collective/returns.hpp"

#include <cmath>

#include "collective/error.hpp"

namespace collective {

RawReturns log_returns(const PricePanel& panel) {
  const Eigen::MatrixXd logp = panel.prices.array().log().matrix();
  const Eigen::Index steps = logp.cols() - 1;
  RawReturns raw;
  raw.labels = panel.labels;
  raw.values = logp.rightCols(steps) - logp.leftCols(steps);
  return raw;
}

ReturnPanel normalize(const RawReturns& raw) {
  const Eigen::Index n = raw.values.rows();
  const Eigen::Index t = raw.values.cols();
  if (t < 2) throw InputError("normalize: need at least 2 returns per asset");

  ReturnPanel rp;
  rp.labels = raw.labels;
  rp.returns.resize(n, t);
  rp.mean.resize(n);
  rp.stddev.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto row = raw.values.row(i);
    const std::string& label = raw.labels[static_cast<std::size_t>(i)];
    if (!row.allFinite()) throw InputError("normalize: non-finite return for asset " + label);
    // A constant row can still yield sigma ~ 1e-17 from rounding in the mean.
    if (row.maxCoeff() == row.minCoeff()) {
      throw InputError("normalize: zero variance for asset " + label);
    }
    const double mu = row.mean();
    const Eigen::RowVectorXd centered = row.array() - mu;
    const double sigma = std::sqrt(centered.squaredNorm() / static_cast<double>(t));
    if (!(sigma > 0.0)) throw InputError("normalize: zero variance for asset " + label);
    rp.mean(i) = mu;
    rp.stddev(i) = sigma;
    rp.returns.row(i) = centered / sigma;
  }
  return rp;
}

}  // namespace collective
