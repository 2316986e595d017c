#include <doctest.h>

#include <cmath>
#include <random>

#include "collective/error.hpp"
#include "collective/returns.hpp"

using namespace collective;

namespace {

PricePanel panel_of(const Eigen::MatrixXd& prices) {
  PricePanel p;
  for (Eigen::Index i = 0; i < prices.rows(); ++i) p.labels.push_back("P" + std::to_string(i));
  for (Eigen::Index t = 0; t < prices.cols(); ++t)
    p.dates.emplace_back(std::chrono::sys_days{std::chrono::year{2020} / 1 / 1} + std::chrono::days{t});
  p.prices = prices;
  return p;
}

RawReturns raw_of(const Eigen::MatrixXd& values) {
  RawReturns r;
  for (Eigen::Index i = 0; i < values.rows(); ++i) r.labels.push_back("R" + std::to_string(i));
  r.values = values;
  return r;
}

Eigen::MatrixXd random_prices(Eigen::Index n, Eigen::Index t, unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> u(0.5, 200.0);
  Eigen::MatrixXd m(n, t);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index s = 0; s < t; ++s) m(i, s) = u(gen);
  return m;
}

}  // namespace

TEST_CASE("log returns of simple rows") {
  Eigen::MatrixXd prices(2, 3);
  prices << 5, 5, 5, 1, std::exp(1.0), std::exp(2.0);
  const auto raw = log_returns(panel_of(prices));
  CHECK(raw.values.cols() == 2);
  CHECK(raw.values(0, 0) == 0.0);
  CHECK(raw.values(0, 1) == 0.0);
  CHECK(raw.values(1, 0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(raw.values(1, 1) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("exp of cumulative returns reconstructs prices up to the initial price") {
  const auto prices = random_prices(4, 30, 7);
  const auto raw = log_returns(panel_of(prices));
  for (Eigen::Index i = 0; i < prices.rows(); ++i) {
    double logp = 0.0;
    for (Eigen::Index t = 0; t < raw.values.cols(); ++t) {
      logp += raw.values(i, t);
      CHECK(prices(i, 0) * std::exp(logp) == doctest::Approx(prices(i, t + 1)).epsilon(1e-12));
    }
  }
}

TEST_CASE("normalize") {
  SUBCASE("already normalized row is unchanged") {
    Eigen::MatrixXd v(1, 2);
    v << 1, -1;
    const auto rp = normalize(raw_of(v));
    CHECK(rp.returns(0, 0) == 1.0);
    CHECK(rp.returns(0, 1) == -1.0);
    CHECK(rp.mean(0) == 0.0);
    CHECK(rp.stddev(0) == 1.0);
  }
  SUBCASE("constant row names the asset") {
    Eigen::MatrixXd v(2, 3);
    v << 1, 2, 3, 2, 2, 2;
    try {
      normalize(raw_of(v));
      FAIL("expected zero-variance error");
    } catch (const InputError& e) {
      CHECK(std::string(e.what()).find("R1") != std::string::npos);
      CHECK(std::string(e.what()).find("zero variance") != std::string::npos);
    }
  }
  SUBCASE("constant row whose mean rounds still counts as zero variance") {
    Eigen::MatrixXd v(1, 3);
    v << 0.1, 0.1, 0.1;
    CHECK_THROWS_AS(normalize(raw_of(v)), InputError);
  }
  SUBCASE("constant prices surface as zero variance") {
    Eigen::MatrixXd prices(2, 4);
    prices << 5, 5, 5, 5, 1, 2, 3, 4;
    CHECK_THROWS_AS(normalize(log_returns(panel_of(prices))), InputError);
  }
}

TEST_CASE("normalized rows have mean 0 and population sd 1; meta recovers raw returns") {
  const auto raw = log_returns(panel_of(random_prices(6, 250, 11)));
  const auto rp = normalize(raw);
  const double t = static_cast<double>(rp.length());
  for (Eigen::Index i = 0; i < rp.assets(); ++i) {
    CHECK(std::abs(rp.returns.row(i).mean()) <= 1e-12);
    CHECK(std::abs(std::sqrt(rp.returns.row(i).squaredNorm() / t) - 1.0) <= 1e-12);
    const Eigen::RowVectorXd back = rp.returns.row(i).array() * rp.stddev(i) + rp.mean(i);
    CHECK((back - raw.values.row(i)).cwiseAbs().maxCoeff() <= 1e-12);
  }
  CHECK(rp.length() == 249);
}

TEST_CASE("normalize is idempotent") {
  const auto once = normalize(log_returns(panel_of(random_prices(5, 100, 3))));
  RawReturns again{once.labels, once.returns};
  const auto twice = normalize(again);
  CHECK((twice.returns - once.returns).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("scaling one asset's prices leaves its normalized returns unchanged") {
  auto prices = random_prices(3, 80, 5);
  const auto base = normalize(log_returns(panel_of(prices)));
  prices.row(1) *= 37.5;
  const auto scaled = normalize(log_returns(panel_of(prices)));
  CHECK((scaled.returns - base.returns).cwiseAbs().maxCoeff() <= 1e-12);
}
