#include "collective/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "collective/error.hpp"

namespace collective {

CorrelationMatrix correlate(const ReturnPanel& rp) {
  const Eigen::Index n = rp.assets();
  const double t = static_cast<double>(rp.length());
  CorrelationMatrix c;
  c.labels = rp.labels;
  c.entries = Eigen::MatrixXd::Zero(n, n);
  c.entries.selfadjointView<Eigen::Upper>().rankUpdate(rp.returns, 1.0 / t);
  for (Eigen::Index i = 0; i < n; ++i) {
    c.entries(i, i) = 1.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = std::clamp(c.entries(i, j), -1.0, 1.0);
      c.entries(i, j) = v;
      c.entries(j, i) = v;
    }
  }
  return c;
}

CorrelationMatrix validated(CorrelationMatrix c, double tol) {
  const Eigen::Index n = c.entries.rows();
  const auto fail = [&](Eigen::Index i, Eigen::Index j, const std::string& why) {
    std::ostringstream os;
    os << "correlation matrix: entry (" << i << "," << j << ") " << why;
    throw InputError(os.str());
  };
  if (c.entries.cols() != n) throw InputError("correlation matrix: not square");
  if (static_cast<Eigen::Index>(c.labels.size()) != n) {
    throw InputError("correlation matrix: label count does not match dimension");
  }
  if (n < 2) throw InputError("correlation matrix: need N >= 2");
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(std::abs(c.entries(i, i) - 1.0) <= tol)) fail(i, i, "diagonal is not 1");
    c.entries(i, i) = 1.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double a = c.entries(i, j);
      if (!std::isfinite(a)) fail(i, j, "is not finite");
      if (!(std::abs(a - c.entries(j, i)) <= tol)) fail(i, j, "breaks symmetry");
      if (!(std::abs(a) <= 1.0 + tol)) fail(i, j, "lies outside [-1, 1]");
      const double v = std::clamp(a, -1.0, 1.0);
      c.entries(i, j) = v;
      c.entries(j, i) = v;
    }
  }
  return c;
}

void fix_signs(Eigen::MatrixXd& vectors) {
  for (Eigen::Index k = 0; k < vectors.cols(); ++k) {
    Eigen::Index arg = 0;
    vectors.col(k).cwiseAbs().maxCoeff(&arg);
    if (vectors(arg, k) < 0.0) vectors.col(k) *= -1.0;
  }
}

double max_residual(const Eigen::MatrixXd& symmetric, const EigenSystem& es) {
  const Eigen::MatrixXd r =
      symmetric * es.eigenvectors - es.eigenvectors * es.eigenvalues.asDiagonal();
  return r.colwise().norm().maxCoeff();
}

EigenSystem eigendecompose(const Eigen::MatrixXd& symmetric) {
  const Eigen::Index n = symmetric.rows();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(symmetric);
  EigenSystem es;
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eigendecompose: solver did not converge", std::nan(""));
  }
  // Solver order is ascending.
  es.eigenvalues = solver.eigenvalues().reverse();
  es.eigenvectors = solver.eigenvectors().rowwise().reverse();
  fix_signs(es.eigenvectors);

  const double residual = max_residual(symmetric, es);
  if (!(residual <= 1e-10 * static_cast<double>(n))) {
    std::ostringstream os;
    os << "eigendecompose: residual " << residual << " exceeds " << 1e-10 * static_cast<double>(n);
    throw NumericalError(os.str(), residual);
  }
  return es;
}

}  // namespace collective
