#include "collective/pipeline.hpp"

#include <openssl/opensslv.h>

#include <Eigen/Core>
#include <json.hpp>
#include <sstream>

#include "collective/correlation.hpp"
#include "collective/error.hpp"
#include "collective/io.hpp"
#include "collective/returns.hpp"
#include "collective/rng.hpp"
#include "csv_util.hpp"

namespace collective {

using nlohmann::json;

namespace {

template <typename Fn>
auto in_stage(std::string_view stage, Fn&& fn) -> decltype(fn()) {
  const std::string prefix = std::string(stage) + ": ";
  try {
    return fn();
  } catch (const InputError& e) {
    throw InputError(prefix + e.what());
  } catch (const NumericalError& e) {
    throw NumericalError(prefix + e.what(), e.residual());
  } catch (const IoError& e) {
    throw IoError(prefix + e.what());
  }
}

}  // namespace

EmitFlags EmitFlags::parse(std::string_view list) {
  if (list == "all") return {};
  EmitFlags f{false, false, false, false, false};
  std::size_t start = 0;
  while (start <= list.size()) {
    auto end = list.find(',', start);
    if (end == std::string_view::npos) end = list.size();
    const auto item = list.substr(start, end - start);
    if (item == "report") f.report = true;
    else if (item == "histogram") f.histogram = true;
    else if (item == "dendrogram") f.dendrogram = true;
    else if (item == "heatmap") f.heatmap = true;
    else if (item == "correlation") f.correlation = true;
    else if (item == "all") f = {};
    else if (!item.empty()) throw InputError("unknown --emit item '" + std::string(item) + "'");
    start = end + 1;
  }
  return f;
}

std::string EmitFlags::to_string() const {
  std::string out;
  const auto add = [&](bool on, const char* name) {
    if (!on) return;
    if (!out.empty()) out += ",";
    out += name;
  };
  add(report, "report");
  add(histogram, "histogram");
  add(dendrogram, "dendrogram");
  add(heatmap, "heatmap");
  add(correlation, "correlation");
  return out;
}

void RunConfig::validate() const {
  if (!(threshold > -1.0 && threshold < 1.0)) throw InputError("--threshold must lie in (-1, 1)");
  if (ensemble < 1) throw InputError("--ensemble must be >= 1");
  if (bins < 2) throw InputError("histogram bins must be >= 2");
  if (from && to && *to < *from) throw InputError("--from is after --to");
}

CorrelationMatrix correlation_from_prices(const RunConfig& cfg) {
  const auto series = in_stage("ingest", [&] { return load_csv(cfg.input, cfg.layout); });
  const auto panel = in_stage("ingest", [&] {
    auto p = align(series, cfg.align);
    if (cfg.from || cfg.to) p = restrict_dates(p, cfg.from, cfg.to);
    return p;
  });
  const auto rp = in_stage("returns", [&] { return normalize(log_returns(panel)); });
  return in_stage("correlation", [&] { return correlate(rp); });
}

Artifacts analysis_artifacts(const CorrelationMatrix& c, const RunConfig& cfg) {
  const auto report = in_stage("participation", [&] { return analyze(c, cfg.ensemble, cfg.seed, cfg.threads); });
  Artifacts out;
  if (cfg.emit.correlation) out["correlation.csv"] = io::matrix_csv(c);
  if (cfg.emit.report) {
    out["report.json"] = io::report_json(report).dump(2) + "\n";
    out["pr.csv"] = io::pr_csv(report);
    out["npr.csv"] = io::npr_csv(report);
  }
  if (cfg.emit.histogram) {
    const std::vector<double> ind(report.independency.begin(), report.independency.end());
    const auto h = in_stage("participation", [&] { return independency_pdf(ind, cfg.bins); });
    out["independency_hist.csv"] = io::histogram_csv(h);
  }
  return out;
}

Artifacts cluster_artifacts(const CorrelationMatrix& c, const RunConfig& cfg) {
  return in_stage("clustering", [&] {
    Artifacts out;
    const ClusterTree tree = agglomerate(correlation_distance(c), cfg.linkage);
    if (cfg.emit.dendrogram) {
      out["dendrogram.newick"] = io::newick(tree, c.labels);
      out["dendrogram.json"] = io::dendrogram_json(tree, c.labels).dump(2) + "\n";
      out["communities.csv"] = io::communities_csv(cut_at_correlation(tree, c.labels, cfg.threshold));
    }
    if (cfg.emit.heatmap) {
      const auto hm = reorder_heatmap(c, tree);
      out["heatmap.csv"] = io::matrix_csv(hm.matrix);
      out["heatmap.json"] = io::heatmap_json(hm).dump(2) + "\n";
    }
    return out;
  });
}

std::string rpr_json(const CorrelationMatrix& c, std::size_t ensemble, std::uint64_t seed,
                     unsigned threads) {
  const auto rel = in_stage("participation", [&] {
    return relative_participation_ratio(c, ensemble, seed, threads);
  });
  const json j = {{"labels", c.labels},
                  {"delta", rel.delta},
                  {"delta_std", rel.delta_std},
                  {"mean_pr", rel.mean_pr},
                  {"member_mean_pr", rel.member_mean_pr},
                  {"member_delta", rel.member_delta},
                  {"ensemble_meta", {{"M", rel.count}, {"seed", rel.seed}, {"rng", std::string(kRngAlgorithm)}}}};
  return j.dump(2) + "\n";
}

std::string manifest_json(const RunConfig& cfg, const std::string& input_digest,
                          const Artifacts& artifacts) {
  json digests = json::object();
  for (const auto& [name, content] : artifacts) digests[name] = io::sha256_hex(content);
  json config = {
      {"input", cfg.input.string()},
      {"layout", cfg.layout == CsvLayout::Wide ? "wide" : "long"},
      {"align", cfg.align.kind == AlignPolicy::Kind::Intersection ? "intersection" : "forward_fill"},
      {"max_gap", cfg.align.max_gap},
      {"from", cfg.from ? format_date(*cfg.from) : ""},
      {"to", cfg.to ? format_date(*cfg.to) : ""},
      {"ensemble", cfg.ensemble},
      {"linkage", std::string(to_string(cfg.linkage))},
      {"threshold", cfg.threshold},
      {"bins", cfg.bins},
      {"emit", cfg.emit.to_string()},
  };
  std::ostringstream eigen_version;
  eigen_version << EIGEN_WORLD_VERSION << "." << EIGEN_MAJOR_VERSION << "." << EIGEN_MINOR_VERSION;
  const json j = {
      {"config", config},
      {"seed", cfg.seed},
      {"rng", std::string(kRngAlgorithm)},
      {"input_sha256", input_digest},
      {"libraries",
       {{"eigen", eigen_version.str()},
        {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                              std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                              std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
        {"openssl", OPENSSL_VERSION_TEXT}}},
      {"artifacts", digests},
  };
  return j.dump(2) + "\n";
}

void write_artifacts(const std::filesystem::path& dir, const Artifacts& artifacts) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  std::vector<std::filesystem::path> written;
  try {
    for (const auto& [name, content] : artifacts) {
      io::write_atomic(dir / name, content);
      written.push_back(dir / name);
    }
  } catch (...) {
    for (const auto& p : written) std::filesystem::remove(p, ec);
    throw;
  }
}

Artifacts run_pipeline(const RunConfig& cfg) {
  in_stage("config", [&] { cfg.validate(); });
  const std::string input_digest =
      in_stage("ingest", [&] { return io::sha256_hex(io::read_text(cfg.input)); });
  const CorrelationMatrix c = correlation_from_prices(cfg);

  Artifacts out = analysis_artifacts(c, cfg);
  out.merge(cluster_artifacts(c, cfg));
  out["manifest.json"] = manifest_json(cfg, input_digest, out);
  in_stage("output", [&] { write_artifacts(cfg.out, out); });
  return out;
}

}  // namespace collective
