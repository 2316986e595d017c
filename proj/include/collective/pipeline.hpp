#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "collective/clustering.hpp"
#include "collective/ingest.hpp"
#include "collective/participation.hpp"

namespace collective {

struct EmitFlags {
  bool report = true;       ///< report.json, pr.csv, npr.csv
  bool histogram = true;    ///< independency_hist.csv
  bool dendrogram = true;   ///< dendrogram.newick, dendrogram.json, communities.csv
  bool heatmap = true;      ///< heatmap.csv, heatmap.json
  bool correlation = true;  ///< correlation.csv

  /// Comma-separated subset of report,histogram,dendrogram,heatmap,correlation or "all".
  static EmitFlags parse(std::string_view list);
  std::string to_string() const;
};

struct RunConfig {
  std::filesystem::path input;
  CsvLayout layout = CsvLayout::Wide;
  AlignPolicy align;
  std::optional<Date> from;
  std::optional<Date> to;
  std::size_t ensemble = 100;
  std::uint64_t seed = 42;
  Linkage linkage = Linkage::Average;
  double threshold = 0.3;
  std::size_t bins = 20;
  unsigned threads = 0;
  std::filesystem::path out;
  EmitFlags emit;

  /// Throws InputError on out-of-range values.
  void validate() const;
};

/// File name -> content, in write order.
using Artifacts = std::map<std::string, std::string>;

/// ingest -> returns -> correlation. Errors are prefixed with the stage name.
CorrelationMatrix correlation_from_prices(const RunConfig& cfg);

/// Participation artifacts (report.json, pr.csv, npr.csv, independency_hist.csv).
Artifacts analysis_artifacts(const CorrelationMatrix& c, const RunConfig& cfg);

/// Clustering artifacts (dendrogram.*, communities.csv, heatmap.*).
Artifacts cluster_artifacts(const CorrelationMatrix& c, const RunConfig& cfg);

/// Standalone relative participation ratio summary as JSON text.
std::string rpr_json(const CorrelationMatrix& c, std::size_t ensemble, std::uint64_t seed,
                     unsigned threads = 0);

/// manifest.json: config, seed, RNG algorithm, library versions, input and
/// artifact digests. Contains no timestamps or output paths.
std::string manifest_json(const RunConfig& cfg, const std::string& input_digest,
                          const Artifacts& artifacts);

/// Writes every artifact atomically into `dir` (created if needed). If any
/// write fails, files already written by this call are removed.
void write_artifacts(const std::filesystem::path& dir, const Artifacts& artifacts);

/// Full run: computes everything in memory, then writes the artifacts
/// selected by cfg.emit plus manifest.json. Returns what was written.
Artifacts run_pipeline(const RunConfig& cfg);

}  // namespace collective
