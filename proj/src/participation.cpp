#include "collective/participation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

#include "collective/error.hpp"
#include "collective/nullmodel.hpp"

namespace collective {

Eigen::VectorXd participation_ratios(const EigenSystem& es) {
  return es.eigenvectors.array().square().square().colwise().sum().inverse().transpose();
}

Eigen::VectorXd node_participation_ratios(const EigenSystem& es) {
  return es.eigenvectors.array().square().square().rowwise().sum().inverse();
}

double relative_participation(double mean_pr, double mean_pr_shuffled) {
  return (mean_pr_shuffled - mean_pr) / mean_pr_shuffled;
}

namespace {

struct MemberResult {
  Eigen::VectorXd pr;
  Eigen::VectorXd npr_sorted;
  std::exception_ptr error;
};

template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
  }
}

}  // namespace

RelativeParticipation relative_participation_ratio(const CorrelationMatrix& c, const EigenSystem& es,
                                                   std::size_t count, std::uint64_t seed,
                                                   unsigned threads) {
  if (count < 1) throw InputError("relative participation: ensemble size must be >= 1");
  const Eigen::Index n = c.size();

  std::vector<MemberResult> members(count);
  parallel_for(count, threads, [&](std::size_t m) {
    try {
      const CorrelationMatrix shuffled = shuffle_member(c, seed, m);
      const EigenSystem ses = eigendecompose(shuffled);
      members[m].pr = participation_ratios(ses);
      members[m].npr_sorted = node_participation_ratios(ses);
      std::sort(members[m].npr_sorted.begin(), members[m].npr_sorted.end());
    } catch (...) {
      members[m].error = std::current_exception();
    }
  });

  RelativeParticipation out;
  out.count = count;
  out.seed = seed;
  out.mean_pr = participation_ratios(es).mean();
  out.shuffled_pr_mean = Eigen::VectorXd::Zero(n);
  out.shuffled_npr_sorted_mean = Eigen::VectorXd::Zero(n);
  for (std::size_t m = 0; m < count; ++m) {
    if (members[m].error) {
      try {
        std::rethrow_exception(members[m].error);
      } catch (const NumericalError& e) {
        throw NumericalError("shuffle member " + std::to_string(m) + ": " + e.what(), e.residual());
      }
    }
    const double mean_sh = members[m].pr.mean();
    out.member_mean_pr.push_back(mean_sh);
    out.member_delta.push_back(relative_participation(out.mean_pr, mean_sh));
    out.shuffled_pr_mean += members[m].pr;
    out.shuffled_npr_sorted_mean += members[m].npr_sorted;
  }
  const double mcount = static_cast<double>(count);
  out.shuffled_pr_mean /= mcount;
  out.shuffled_npr_sorted_mean /= mcount;

  double sum = 0.0;
  for (double d : out.member_delta) sum += d;
  out.delta = sum / mcount;
  double ss = 0.0;
  for (double d : out.member_delta) ss += (d - out.delta) * (d - out.delta);
  out.delta_std = std::sqrt(ss / mcount);
  return out;
}

RelativeParticipation relative_participation_ratio(const CorrelationMatrix& c, std::size_t count,
                                                   std::uint64_t seed, unsigned threads) {
  return relative_participation_ratio(c, eigendecompose(c), count, seed, threads);
}

Histogram independency_pdf(std::span<const double> values, std::size_t bins) {
  if (values.empty()) throw InputError("independency histogram: no values");
  if (bins < 2) throw InputError("independency histogram: need at least 2 bins");
  for (double v : values) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw InputError("independency histogram: values must be positive and finite");
    }
  }
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it;
  const double hi = *hi_it;

  Histogram h;
  if (lo == hi) {
    h.degenerate = true;
    h.edges = {lo, hi};
    h.counts = {values.size()};
    h.densities = {1.0};
    return h;
  }

  const double ratio = hi / lo;
  h.edges.resize(bins + 1);
  for (std::size_t b = 0; b <= bins; ++b) {
    h.edges[b] = lo * std::pow(ratio, static_cast<double>(b) / static_cast<double>(bins));
  }
  h.edges.front() = lo;
  h.edges.back() = hi;

  h.counts.assign(bins, 0);
  for (double v : values) {
    // First edge strictly greater than v, minus one; hi lands in the last bin.
    auto it = std::upper_bound(h.edges.begin(), h.edges.end(), v);
    auto b = static_cast<std::size_t>(std::distance(h.edges.begin(), it));
    b = std::clamp<std::size_t>(b, 1, bins) - 1;
    ++h.counts[b];
  }
  const double total = static_cast<double>(values.size());
  h.densities.resize(bins);
  for (std::size_t b = 0; b < bins; ++b) {
    h.densities[b] = static_cast<double>(h.counts[b]) / (total * (h.edges[b + 1] - h.edges[b]));
  }
  return h;
}

CollectiveReport analyze(const CorrelationMatrix& c, std::size_t count, std::uint64_t seed,
                         unsigned threads) {
  const EigenSystem es = eigendecompose(c);
  CollectiveReport r;
  r.labels = c.labels;
  r.lambda = es.eigenvalues;
  r.pr = participation_ratios(es);
  r.pr_normalized = r.pr / static_cast<double>(c.size());
  r.npr = node_participation_ratios(es);
  r.independency = r.npr.cwiseInverse();
  r.relative = relative_participation_ratio(c, es, count, seed, threads);
  return r;
}

}  // namespace collective
