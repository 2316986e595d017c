#include "collective/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "collective/error.hpp"

namespace collective {

std::string_view to_string(Linkage linkage) {
  switch (linkage) {
    case Linkage::Average: return "average";
    case Linkage::Single: return "single";
    case Linkage::Complete: return "complete";
  }
  return "average";
}

Linkage parse_linkage(std::string_view name) {
  if (name == "average") return Linkage::Average;
  if (name == "single") return Linkage::Single;
  if (name == "complete") return Linkage::Complete;
  throw InputError("unknown linkage '" + std::string(name) + "'");
}

int CommunityAssignment::communities() const {
  int hi = -1;
  for (int c : community) hi = std::max(hi, c);
  return hi + 1;
}

double distance_for_correlation(double corr) { return std::sqrt(2.0 * (1.0 - corr)); }

Eigen::MatrixXd correlation_distance(const CorrelationMatrix& c) {
  const Eigen::Index n = c.size();
  Eigen::MatrixXd d(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    d(i, i) = 0.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = std::sqrt(std::max(0.0, 2.0 * (1.0 - c.entries(i, j))));
      d(i, j) = v;
      d(j, i) = v;
    }
  }
  return d;
}

namespace {

void check_distance(const Eigen::MatrixXd& d) {
  if (d.rows() != d.cols()) throw InputError("agglomerate: distance matrix is not square");
  if (d.rows() < 2) throw InputError("agglomerate: need at least 2 items");
  for (Eigen::Index i = 0; i < d.rows(); ++i) {
    if (d(i, i) != 0.0) throw InputError("agglomerate: nonzero diagonal");
    for (Eigen::Index j = i + 1; j < d.cols(); ++j) {
      if (!(d(i, j) >= 0.0) || d(i, j) != d(j, i)) {
        throw InputError("agglomerate: distances must be symmetric and non-negative");
      }
    }
  }
}

void collect_leaves(const ClusterTree& tree, int node, std::vector<int>& out) {
  // Explicit stack: chained trees reach depth N.
  std::vector<int> stack{node};
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    if (v < tree.leaves) {
      out.push_back(v);
      continue;
    }
    const Merge& m = tree.merge_of(v);
    int first = m.left;
    int second = m.right;
    if (tree.size_of(second) < tree.size_of(first)) std::swap(first, second);
    stack.push_back(second);
    stack.push_back(first);
  }
}

}  // namespace

ClusterTree agglomerate(const Eigen::MatrixXd& distance, Linkage linkage) {
  check_distance(distance);
  const int n = static_cast<int>(distance.rows());
  const int total = 2 * n - 1;

  // Distances indexed by node id; only rows/cols of active nodes are meaningful.
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(total, total);
  d.topLeftCorner(n, n) = distance;
  std::vector<int> size(static_cast<std::size_t>(total), 1);
  std::vector<int> active(static_cast<std::size_t>(n));
  std::iota(active.begin(), active.end(), 0);

  ClusterTree tree;
  tree.leaves = n;
  tree.linkage = linkage;
  tree.merges.reserve(static_cast<std::size_t>(n - 1));

  for (int step = 0; step < n - 1; ++step) {
    // `active` stays sorted by node id, so strict < keeps the smallest pair on ties.
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = 0, bj = 1;
    for (std::size_t a = 0; a < active.size(); ++a) {
      for (std::size_t b = a + 1; b < active.size(); ++b) {
        const double v = d(active[a], active[b]);
        if (v < best) {
          best = v;
          bi = a;
          bj = b;
        }
      }
    }
    const int left = active[bi];
    const int right = active[bj];
    const int node = n + step;
    const double sl = size[static_cast<std::size_t>(left)];
    const double sr = size[static_cast<std::size_t>(right)];
    size[static_cast<std::size_t>(node)] = size[static_cast<std::size_t>(left)] +
                                           size[static_cast<std::size_t>(right)];
    tree.merges.push_back({left, right, best, size[static_cast<std::size_t>(node)]});

    for (int k : active) {
      if (k == left || k == right) continue;
      const double dl = d(left, k);
      const double dr = d(right, k);
      double v = 0.0;
      switch (linkage) {
        case Linkage::Single: v = std::min(dl, dr); break;
        case Linkage::Complete: v = std::max(dl, dr); break;
        case Linkage::Average:
          // Clamp keeps rounding from dipping below min(dl, dr) and breaking monotone heights.
          v = std::max((sl * dl + sr * dr) / (sl + sr), std::min(dl, dr));
          break;
      }
      d(node, k) = v;
      d(k, node) = v;
    }
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(bj));
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(bi));
    active.push_back(node);
  }

  tree.leaf_order.reserve(static_cast<std::size_t>(n));
  collect_leaves(tree, tree.root(), tree.leaf_order);
  return tree;
}

CommunityAssignment cut_at_correlation(const ClusterTree& tree, std::vector<std::string> labels,
                                       double threshold_corr) {
  if (!(threshold_corr > -1.0 && threshold_corr < 1.0)) {
    throw InputError("community threshold must lie in (-1, 1)");
  }
  if (static_cast<int>(labels.size()) != tree.leaves) {
    throw InputError("cut: label count does not match tree size");
  }
  const auto n = static_cast<std::size_t>(tree.leaves);
  const double h = distance_for_correlation(threshold_corr);

  // Union-find over tree nodes; a merge below the cut joins its two subtrees.
  std::vector<std::size_t> parent(2 * n - 1);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  const auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t m = 0; m < tree.merges.size(); ++m) {
    const Merge& mg = tree.merges[m];
    if (!(mg.height < h)) continue;
    parent[find(static_cast<std::size_t>(mg.left))] = n + m;
    parent[find(static_cast<std::size_t>(mg.right))] = n + m;
  }

  std::vector<std::size_t> members(2 * n - 1, 0);
  for (std::size_t i = 0; i < n; ++i) ++members[find(i)];

  CommunityAssignment out;
  out.labels = std::move(labels);
  out.threshold_corr = threshold_corr;
  out.cut_height = h;
  out.community.assign(n, -1);
  std::vector<int> id(2 * n - 1, -1);
  int next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    if (members[r] < 2) continue;
    if (id[r] < 0) id[r] = next++;
    out.community[i] = id[r];
  }
  return out;
}

ReorderedMatrix reorder_heatmap(const CorrelationMatrix& c, const ClusterTree& tree) {
  if (c.size() != tree.leaves || static_cast<int>(tree.leaf_order.size()) != tree.leaves) {
    throw InputError("reorder_heatmap: tree has " + std::to_string(tree.leaves) +
                     " leaves but matrix has dimension " + std::to_string(c.size()));
  }
  ReorderedMatrix out;
  out.order = tree.leaf_order;
  const std::vector<Eigen::Index> idx(out.order.begin(), out.order.end());
  out.matrix.entries = c.entries(idx, idx);
  for (int i : out.order) out.matrix.labels.push_back(c.labels[static_cast<std::size_t>(i)]);
  return out;
}

}  // namespace collective
