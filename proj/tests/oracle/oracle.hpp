#pragma once

// Independent reference implementations used only by tests. Nothing here
// calls into the library's numerical code.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

using Matrix = std::vector<std::vector<double>>;

struct Eigenpairs {
  std::vector<double> values;  // descending
  Matrix vectors;              // vectors[k] is the k-th eigenvector
};

/// Cyclic Jacobi rotations until the off-diagonal mass is below 1e-22 of the total.
inline Eigenpairs jacobi(Matrix a) {
  const std::size_t n = a.size();
  Matrix v(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) v[i][i] = 1.0;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0, total = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        total += a[i][j] * a[i][j];
        if (i != j) off += a[i][j] * a[i][j];
      }
    if (off <= 1e-22 * total) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a[p][q] == 0.0) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v[k][p], vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
    }
  }
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](auto x, auto y) { return a[x][x] > a[y][y]; });
  Eigenpairs out;
  for (auto k : idx) {
    out.values.push_back(a[k][k]);
    std::vector<double> col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = v[i][k];
    out.vectors.push_back(col);
  }
  return out;
}

inline double inverse_fourth_moment(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v * v * v * v;
  return 1.0 / s;
}

inline double mean_pr(const Matrix& c) {
  const auto e = jacobi(c);
  double s = 0.0;
  for (const auto& u : e.vectors) s += inverse_fourth_moment(u);
  return s / static_cast<double>(c.size());
}

/// Average-linkage distance between two leaf sets, from scratch.
inline double average_linkage(const Matrix& d, const std::vector<int>& a, const std::vector<int>& b) {
  double s = 0.0;
  for (int i : a)
    for (int j : b) s += d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return s / static_cast<double>(a.size() * b.size());
}

inline double single_linkage(const Matrix& d, const std::vector<int>& a, const std::vector<int>& b) {
  double m = INFINITY;
  for (int i : a)
    for (int j : b) m = std::min(m, d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
  return m;
}

inline double complete_linkage(const Matrix& d, const std::vector<int>& a, const std::vector<int>& b) {
  double m = 0.0;
  for (int i : a)
    for (int j : b) m = std::max(m, d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
  return m;
}

/// Merge heights of naive agglomeration recomputing cluster distances from
/// the original matrix at every step.
template <typename LinkFn>
std::vector<double> brute_force_heights(const Matrix& d, LinkFn link) {
  std::vector<std::vector<int>> clusters;
  for (int i = 0; i < static_cast<int>(d.size()); ++i) clusters.push_back({i});
  std::vector<double> heights;
  while (clusters.size() > 1) {
    double best = INFINITY;
    std::size_t bi = 0, bj = 1;
    for (std::size_t i = 0; i < clusters.size(); ++i)
      for (std::size_t j = i + 1; j < clusters.size(); ++j) {
        const double v = link(d, clusters[i], clusters[j]);
        if (v < best) {
          best = v;
          bi = i;
          bj = j;
        }
      }
    heights.push_back(best);
    clusters[bi].insert(clusters[bi].end(), clusters[bj].begin(), clusters[bj].end());
    clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(bj));
  }
  return heights;
}

/// Sample Pearson correlation matrix of Gaussian rows with an optional
/// common factor, built with <random> independently of the library's generator.
inline Matrix gaussian_correlation(std::size_t n, std::size_t t, double gamma, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal;
  std::vector<double> f(t);
  for (auto& x : f) x = normal(gen);
  Matrix r(n, std::vector<double>(t));
  for (auto& row : r) {
    for (std::size_t s = 0; s < t; ++s) row[s] = std::sqrt(gamma) * f[s] + std::sqrt(1 - gamma) * normal(gen);
    double mean = std::accumulate(row.begin(), row.end(), 0.0) / static_cast<double>(t);
    double ss = 0.0;
    for (double& x : row) {
      x -= mean;
      ss += x * x;
    }
    const double sd = std::sqrt(ss / static_cast<double>(t));
    for (double& x : row) x /= sd;
  }
  Matrix c(n, std::vector<double>(n, 1.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < t; ++k) s += r[i][k] * r[j][k];
      c[i][j] = c[j][i] = std::clamp(s / static_cast<double>(t), -1.0, 1.0);
    }
  return c;
}

}  // namespace oracle
