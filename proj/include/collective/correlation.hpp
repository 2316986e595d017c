#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "collective/returns.hpp"

namespace collective {

/// Equal-time cross-correlation matrix: symmetric, diagonal exactly 1,
/// off-diagonal entries in [-1, 1].
struct CorrelationMatrix {
  std::vector<std::string> labels;
  Eigen::MatrixXd entries;

  Eigen::Index size() const { return entries.rows(); }
};

/// Eigenpairs of a symmetric matrix. Eigenvalues descending; column k of
/// `eigenvectors` pairs with eigenvalues(k) and has its largest-magnitude
/// component positive.
struct EigenSystem {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;

  Eigen::Index size() const { return eigenvalues.size(); }
};

/// C_ij = (1/T) sum_t r_i(t) r_j(t). Upper triangle computed and mirrored,
/// diagonal set to 1, off-diagonals clamped to [-1, 1].
CorrelationMatrix correlate(const ReturnPanel& rp);

/// Checks the CorrelationMatrix shape invariants within `tol` and snaps the
/// diagonal to exactly 1 and the lower triangle to the upper. Throws
/// InputError describing the first violation.
CorrelationMatrix validated(CorrelationMatrix c, double tol = 1e-12);

/// Symmetric eigendecomposition. Throws NumericalError carrying the
/// achieved residual if the solver fails or max_k |C u_k - l_k u_k| exceeds
/// 1e-10 * N.
EigenSystem eigendecompose(const Eigen::MatrixXd& symmetric);
inline EigenSystem eigendecompose(const CorrelationMatrix& c) { return eigendecompose(c.entries); }

/// max_k || A u_k - l_k u_k ||_2
double max_residual(const Eigen::MatrixXd& symmetric, const EigenSystem& es);

/// Applies the sign convention in place: each column's largest-magnitude
/// component (first on ties) is made positive.
void fix_signs(Eigen::MatrixXd& vectors);

}  // namespace collective
