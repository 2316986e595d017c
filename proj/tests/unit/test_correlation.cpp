#include <doctest.h>

#include <cmath>

#include "collective/correlation.hpp"
#include "collective/error.hpp"
#include "collective/rng.hpp"
#include "support.hpp"

using namespace collective;

namespace {

ReturnPanel panel_from_rows(const Eigen::MatrixXd& rows) {
  RawReturns raw;
  raw.labels = testing::labels(static_cast<std::size_t>(rows.rows()));
  raw.values = rows;
  return normalize(raw);
}

Eigen::MatrixXd noise(Eigen::Index n, Eigen::Index t, std::uint64_t seed) {
  Rng rng(seed, 0);
  Eigen::MatrixXd m(n, t);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index s = 0; s < t; ++s) m(i, s) = rng.normal();
  return m;
}

}  // namespace

TEST_CASE("identical rows are perfectly correlated; negated rows anti-correlated") {
  Eigen::MatrixXd rows(3, 5);
  rows.row(0) << 0.3, -1.2, 0.8, 2.0, -0.1;
  rows.row(1) = rows.row(0);
  rows.row(2) = -rows.row(0);
  const auto c = correlate(panel_from_rows(rows));
  CHECK(c.entries(0, 1) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(c.entries(0, 2) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(c.entries(0, 0) == 1.0);
  CHECK(c.entries.maxCoeff() <= 1.0);
  CHECK(c.entries.minCoeff() >= -1.0);
}

TEST_CASE("i.i.d. noise rows are nearly uncorrelated at T = 1e5") {
  const auto c = correlate(panel_from_rows(noise(3, 100000, 99)));
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) CHECK(std::abs(c.entries(i, j)) < 0.02);
}

TEST_CASE("correlate: invariants and permutation equivariance") {
  const auto rows = noise(7, 12, 5);  // T > N so C is full rank, T small so entries are sizable
  const auto c = correlate(panel_from_rows(rows));
  CHECK(c.entries == c.entries.transpose());
  CHECK(c.entries.diagonal() == Eigen::VectorXd::Ones(7));
  const auto es = eigendecompose(c);
  CHECK(es.eigenvalues.minCoeff() >= -1e-10);

  const Eigen::VectorXi perm = (Eigen::VectorXi(7) << 3, 0, 6, 1, 5, 2, 4).finished();
  Eigen::PermutationMatrix<Eigen::Dynamic> p(perm);
  const Eigen::MatrixXd permuted_rows = p.transpose() * rows;
  const auto cp = correlate(panel_from_rows(permuted_rows));
  const Eigen::MatrixXd expected = p.transpose() * c.entries * p;
  CHECK((cp.entries - expected).cwiseAbs().maxCoeff() <= 1e-14);
  const auto esp = eigendecompose(cp);
  CHECK((esp.eigenvalues - es.eigenvalues).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("correlation with T < N is singular but positive semi-definite") {
  const auto c = correlate(panel_from_rows(noise(20, 8, 17)));
  const auto es = eigendecompose(c);
  CHECK(es.eigenvalues.minCoeff() >= -1e-10);
  CHECK(es.eigenvalues.sum() == doctest::Approx(20.0).epsilon(1e-12));
}

TEST_CASE("eigendecompose: identity") {
  const auto es = eigendecompose(testing::identity(5));
  CHECK((es.eigenvalues.array() - 1.0).abs().maxCoeff() <= 1e-14);
  CHECK(max_residual(Eigen::MatrixXd::Identity(5, 5), es) <= 1e-12);
  const Eigen::MatrixXd gram = es.eigenvectors.transpose() * es.eigenvectors;
  CHECK((gram - Eigen::MatrixXd::Identity(5, 5)).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("eigendecompose: analytic 2x2") {
  for (double rho : {0.7, -0.4, 0.05}) {
    const auto es = eigendecompose(testing::equicorrelated(2, rho));
    CHECK(es.eigenvalues(0) == doctest::Approx(1 + std::abs(rho)).epsilon(1e-14));
    CHECK(es.eigenvalues(1) == doctest::Approx(1 - std::abs(rho)).epsilon(1e-14));
    const double h = 1.0 / std::sqrt(2.0);
    for (int k = 0; k < 2; ++k) {
      CHECK(std::abs(es.eigenvectors(0, k)) == doctest::Approx(h).epsilon(1e-14));
      CHECK(std::abs(es.eigenvectors(1, k)) == doctest::Approx(h).epsilon(1e-14));
    }
  }
}

TEST_CASE("eigendecompose agrees with the Jacobi oracle on random matrices") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto om = oracle::gaussian_correlation(6, 15, 0.3, seed);
    const auto c = testing::from_oracle(om);
    const auto es = eigendecompose(c);
    const auto ref = oracle::jacobi(om);
    for (int k = 0; k < 6; ++k) CHECK(es.eigenvalues(k) == doctest::Approx(ref.values[static_cast<std::size_t>(k)]).epsilon(1e-12));

    const Eigen::MatrixXd rebuilt = es.eigenvectors * es.eigenvalues.asDiagonal() * es.eigenvectors.transpose();
    CHECK((rebuilt - c.entries).norm() <= 1e-9);
    CHECK(es.eigenvalues.sum() == doctest::Approx(6.0).epsilon(1e-12));
    CHECK(es.eigenvalues.squaredNorm() == doctest::Approx(c.entries.squaredNorm()).epsilon(1e-12));
    for (int k = 1; k < 6; ++k) CHECK(es.eigenvalues(k - 1) >= es.eigenvalues(k));
  }
}

TEST_CASE("sign convention: largest-magnitude component positive") {
  const auto c = testing::from_oracle(oracle::gaussian_correlation(8, 20, 0.4, 3));
  const auto es = eigendecompose(c);
  for (Eigen::Index k = 0; k < 8; ++k) {
    Eigen::Index arg = 0;
    es.eigenvectors.col(k).cwiseAbs().maxCoeff(&arg);
    CHECK(es.eigenvectors(arg, k) > 0.0);
  }
  const auto again = eigendecompose(c);
  CHECK(again.eigenvectors == es.eigenvectors);
}

TEST_CASE("validated rejects malformed matrices and snaps tiny asymmetry") {
  auto c = testing::equicorrelated(3, 0.2);
  c.entries(0, 1) += 1e-14;
  const auto ok = validated(c);
  CHECK(ok.entries(0, 1) == ok.entries(1, 0));

  auto asym = testing::equicorrelated(3, 0.2);
  asym.entries(0, 2) = 0.5;
  CHECK_THROWS_AS(validated(asym), InputError);

  auto diag = testing::equicorrelated(3, 0.2);
  diag.entries(1, 1) = 0.9;
  CHECK_THROWS_AS(validated(diag), InputError);

  auto range = testing::equicorrelated(3, 0.2);
  range.entries(0, 1) = range.entries(1, 0) = 1.5;
  CHECK_THROWS_AS(validated(range), InputError);

  auto labels = testing::equicorrelated(3, 0.2);
  labels.labels.pop_back();
  CHECK_THROWS_AS(validated(labels), InputError);
}
