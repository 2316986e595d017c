#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "collective/clustering.hpp"
#include "collective/correlation.hpp"
#include "collective/ingest.hpp"
#include "collective/participation.hpp"

namespace collective::io {

// Every CSV writer prints doubles with 17 significant digits so reads are exact.

/// Wide price CSV as consumed by load_csv(..., CsvLayout::Wide).
std::string prices_wide_csv(const PricePanel& panel);
/// Long price CSV (date,label,price), rows grouped by date.
std::string prices_long_csv(const PricePanel& panel);

/// Header `label,L1,...,LN`, then one row per asset with its label first.
std::string matrix_csv(const CorrelationMatrix& c);
/// Reads matrix_csv output and validates it as a correlation matrix.
CorrelationMatrix parse_matrix_csv(std::string_view text, std::string_view source = "<memory>");

nlohmann::json matrix_json(const CorrelationMatrix& c);
CorrelationMatrix parse_matrix_json(const nlohmann::json& j);

/// {labels, lambda, pr, pr_normalized, npr, independency, delta, delta_std,
///  ensemble_meta: {M, seed, rng}, shuffled: {...}}
nlohmann::json report_json(const CollectiveReport& r);
CollectiveReport parse_report_json(const nlohmann::json& j);

/// k,lambda,pr,pr_normalized,shuffled_pr_mean with k starting at 1.
std::string pr_csv(const CollectiveReport& r);
/// label,npr,independency,shuffled_npr_mean in ascending-NPR order; the
/// shuffled column is the sorted-positional ensemble mean at the same rank.
std::string npr_csv(const CollectiveReport& r);

/// bin_left,bin_right,density
std::string histogram_csv(const Histogram& h);
Histogram parse_histogram_csv(std::string_view text);

/// Newick with asset labels at the leaves and height differences as branch
/// lengths; children follow the tree's leaf order.
std::string newick(const ClusterTree& tree, const std::vector<std::string>& labels);

/// Parsed Newick node, for round-trip checks.
struct NewickNode {
  std::string label;
  double length = 0.0;
  std::vector<NewickNode> children;
};
NewickNode parse_newick(std::string_view text);

/// {labels, linkage, leaf_order, merges: [{left, right, height, size}]}
nlohmann::json dendrogram_json(const ClusterTree& tree, const std::vector<std::string>& labels);
ClusterTree parse_dendrogram_json(const nlohmann::json& j);

/// label,community
std::string communities_csv(const CommunityAssignment& a);
CommunityAssignment parse_communities_csv(std::string_view text);

/// {labels, order}: the leaf order used for a reordered heatmap.
nlohmann::json heatmap_json(const ReorderedMatrix& r);

std::string read_text(const std::filesystem::path& path);

/// Writes via a temporary sibling file and rename. Throws IoError.
void write_atomic(const std::filesystem::path& path, std::string_view content);

/// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view data);

}  // namespace collective::io
