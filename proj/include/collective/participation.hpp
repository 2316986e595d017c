#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "collective/correlation.hpp"

namespace collective {

/// P_k = 1 / sum_l u_k(l)^4 for each eigenvector (column), in the order of `es`.
/// Ranges from 1 (one nonzero component) to N (all components equal).
Eigen::VectorXd participation_ratios(const EigenSystem& es);

/// N_l = 1 / sum_k u_k(l)^4, i.e. the same inverse fourth moment taken
/// along row l of the eigenvector matrix. Low values mark assets that move
/// independently of the collective modes.
Eigen::VectorXd node_participation_ratios(const EigenSystem& es);

/// (mean_pr_shuffled - mean_pr) / mean_pr_shuffled
double relative_participation(double mean_pr, double mean_pr_shuffled);

/// Relative participation ratio of a matrix against its shuffle ensemble.
struct RelativeParticipation {
  double delta = 0.0;      ///< mean over members of the per-member ratio
  double delta_std = 0.0;  ///< population standard deviation over members
  double mean_pr = 0.0;    ///< <P> of the base matrix
  std::vector<double> member_mean_pr;
  std::vector<double> member_delta;
  /// Mean over members of P_k, position k in descending-eigenvalue order.
  Eigen::VectorXd shuffled_pr_mean;
  /// Each member's NPRs sorted ascending, then averaged position by position.
  Eigen::VectorXd shuffled_npr_sorted_mean;
  std::size_t count = 0;
  std::uint64_t seed = 0;
};

/// Decomposes `count` shuffled members (streams 0..count-1 of `seed`) on
/// up to `threads` threads (0 = hardware concurrency). Output does not
/// depend on the thread count. An eigensolver failure is rethrown as
/// NumericalError naming the lowest failing member index.
RelativeParticipation relative_participation_ratio(const CorrelationMatrix& c, std::size_t count,
                                                   std::uint64_t seed, unsigned threads = 0);

/// Same, reusing an existing decomposition of `c`.
RelativeParticipation relative_participation_ratio(const CorrelationMatrix& c, const EigenSystem& es,
                                                   std::size_t count, std::uint64_t seed,
                                                   unsigned threads = 0);

struct Histogram {
  std::vector<double> edges;  ///< bins + 1 edges, logarithmically spaced
  std::vector<std::size_t> counts;
  std::vector<double> densities;
  /// All values identical: one bin [v, v] holding every value, density 1.
  bool degenerate = false;
};

/// Log-binned density of positive values over [min, max]; the last bin is
/// closed. Densities satisfy sum(density * width) = 1.
Histogram independency_pdf(std::span<const double> values, std::size_t bins = 20);

struct CollectiveReport {
  std::vector<std::string> labels;
  Eigen::VectorXd lambda;
  Eigen::VectorXd pr;
  Eigen::VectorXd pr_normalized;
  Eigen::VectorXd npr;
  Eigen::VectorXd independency;
  RelativeParticipation relative;
};

/// Runs the whole participation analysis of one correlation matrix.
CollectiveReport analyze(const CorrelationMatrix& c, std::size_t count, std::uint64_t seed,
                         unsigned threads = 0);

}  // namespace collective
