#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "collective/correlation.hpp"

namespace collective {

enum class Linkage { Average, Single, Complete };

std::string_view to_string(Linkage linkage);
Linkage parse_linkage(std::string_view name);

/// One agglomeration step. Leaves are nodes 0..N-1; the node created by
/// merge m is N + m. left < right.
struct Merge {
  int left = 0;
  int right = 0;
  double height = 0.0;
  int size = 0;  ///< leaves under the new node
};

struct ClusterTree {
  int leaves = 0;
  Linkage linkage = Linkage::Average;
  std::vector<Merge> merges;  ///< exactly leaves - 1, heights non-decreasing
  std::vector<int> leaf_order;  ///< depth-first, smaller subtree first

  int root() const { return 2 * leaves - 2; }
  /// Children of internal node `node` (node >= leaves).
  const Merge& merge_of(int node) const { return merges[static_cast<std::size_t>(node - leaves)]; }
  /// Number of leaves under `node`.
  int size_of(int node) const { return node < leaves ? 1 : merge_of(node).size; }
};

struct CommunityAssignment {
  std::vector<std::string> labels;
  std::vector<int> community;  ///< -1 for assets left on their own
  double threshold_corr = 0.0;
  double cut_height = 0.0;

  int communities() const;
};

/// d_ij = sqrt(2 (1 - C_ij)), zero diagonal.
Eigen::MatrixXd correlation_distance(const CorrelationMatrix& c);

/// Height in distance space equivalent to a correlation level.
double distance_for_correlation(double corr);

/// Naive O(N^3) agglomerative clustering with Lance-Williams updates. Ties
/// go to the lexicographically smallest (node, node) pair.
ClusterTree agglomerate(const Eigen::MatrixXd& distance, Linkage linkage = Linkage::Average);

/// Cuts the tree at distance_for_correlation(threshold_corr): communities
/// are maximal subtrees whose merges all lie strictly below that height.
/// Community ids are numbered in order of each community's smallest asset
/// index; singletons get -1.
CommunityAssignment cut_at_correlation(const ClusterTree& tree, std::vector<std::string> labels,
                                       double threshold_corr);

struct ReorderedMatrix {
  CorrelationMatrix matrix;
  std::vector<int> order;  ///< row r of `matrix` is original asset order[r]
};

/// P C P^T for the tree's leaf order.
ReorderedMatrix reorder_heatmap(const CorrelationMatrix& c, const ClusterTree& tree);

}  // namespace collective
