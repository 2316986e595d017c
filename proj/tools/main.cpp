// collective: correlation-matrix participation analysis of a set of price series.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>

#include "collective/error.hpp"
#include "collective/io.hpp"
#include "collective/pipeline.hpp"
#include "collective/synth.hpp"

namespace {

using namespace collective;

constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Input: return kExitInput;
    case ErrorKind::Numerical: return kExitNumerical;
    case ErrorKind::Io: return kExitIo;
  }
  return 1;
}

/// Raw flag values; converted into a RunConfig once parsing is complete.
struct Flags {
  std::string input;
  std::string layout = "wide";
  std::string align = "intersection";
  std::size_t max_gap = 1;
  std::string from;
  std::string to;
  std::size_t ensemble = 100;
  std::uint64_t seed = 42;
  std::string linkage = "average";
  double threshold = 0.3;
  std::size_t bins = 20;
  unsigned threads = 0;
  std::string out = "out";
  std::string emit = "all";
};

std::optional<Date> date_flag(const std::string& text, const char* name) {
  if (text.empty()) return std::nullopt;
  auto d = parse_date(text);
  if (!d) throw InputError(std::string(name) + ": expected YYYY-MM-DD, got '" + text + "'");
  return d;
}

RunConfig to_config(const Flags& f) {
  RunConfig cfg;
  cfg.input = f.input;
  cfg.layout = f.layout == "long" ? CsvLayout::Long : CsvLayout::Wide;
  cfg.align = f.align == "forward_fill" ? AlignPolicy::forward_fill(f.max_gap) : AlignPolicy::intersection();
  cfg.from = date_flag(f.from, "--from");
  cfg.to = date_flag(f.to, "--to");
  cfg.ensemble = f.ensemble;
  cfg.seed = f.seed;
  cfg.linkage = parse_linkage(f.linkage);
  cfg.threshold = f.threshold;
  cfg.bins = f.bins;
  cfg.threads = f.threads;
  cfg.out = f.out;
  cfg.emit = EmitFlags::parse(f.emit);
  cfg.validate();
  return cfg;
}

void add_ingest_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--input", f.input, "Price CSV")->required();
  cmd->add_option("--layout", f.layout, "CSV layout")->check(CLI::IsMember({"wide", "long"}));
  cmd->add_option("--align", f.align, "Calendar alignment")
      ->check(CLI::IsMember({"intersection", "forward_fill"}));
  cmd->add_option("--max-gap", f.max_gap, "Longest fillable gap for forward_fill");
  cmd->add_option("--from", f.from, "First date kept (YYYY-MM-DD)");
  cmd->add_option("--to", f.to, "Last date kept (YYYY-MM-DD)");
}

void add_ensemble_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--ensemble,-M", f.ensemble, "Number of shuffled matrices")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", f.seed, "Shuffle seed");
  cmd->add_option("--threads", f.threads, "Worker threads (0 = all cores)");
}

void add_cluster_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--linkage", f.linkage, "Linkage")->check(CLI::IsMember({"average", "single", "complete"}));
  cmd->add_option("--threshold", f.threshold, "Community correlation threshold");
}

std::vector<FactorBlock> parse_blocks(const std::string& text) {
  std::vector<FactorBlock> blocks;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find(',', start);
    if (end == std::string::npos) end = text.size();
    const std::string item = text.substr(start, end - start);
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw InputError("--blocks: expected size:gamma, got '" + item + "'");
    try {
      blocks.push_back({std::stoi(item.substr(0, colon)), std::stod(item.substr(colon + 1))});
    } catch (const std::exception&) {
      throw InputError("--blocks: cannot parse '" + item + "'");
    }
    start = end + 1;
  }
  return blocks;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Collective-behavior analysis of correlated price series"};
  app.require_subcommand(1);
  Flags f;

  auto* run = app.add_subcommand("run", "Full pipeline: prices to reports, dendrogram and heatmap");
  add_ingest_flags(run, f);
  add_ensemble_flags(run, f);
  add_cluster_flags(run, f);
  run->add_option("--bins", f.bins, "Independency histogram bins");
  run->add_option("--out", f.out, "Output directory");
  run->add_option("--emit", f.emit, "Artifacts: all or report,histogram,dendrogram,heatmap,correlation");

  auto* analyze_cmd = app.add_subcommand("analyze", "Participation ratios and relative participation of a price file");
  add_ingest_flags(analyze_cmd, f);
  add_ensemble_flags(analyze_cmd, f);
  analyze_cmd->add_option("--bins", f.bins, "Independency histogram bins");
  analyze_cmd->add_option("--out", f.out, "Output directory");

  auto* cluster_cmd = app.add_subcommand("cluster", "Dendrogram, communities and heatmap of a correlation CSV");
  cluster_cmd->add_option("--input", f.input, "Correlation matrix CSV")->required();
  add_cluster_flags(cluster_cmd, f);
  cluster_cmd->add_option("--out", f.out, "Output directory");

  std::string rpr_out;
  auto* rpr_cmd = app.add_subcommand("rpr", "Relative participation ratio of a correlation CSV");
  rpr_cmd->add_option("--input", f.input, "Correlation matrix CSV")->required();
  add_ensemble_flags(rpr_cmd, f);
  rpr_cmd->add_option("--out", rpr_out, "Output JSON file (default: stdout)");

  FactorSpec spec;
  spec.assets = 40;
  spec.length = 4000;
  spec.gamma = 0.5;
  std::string blocks;
  double volatility = 0.01;
  std::string synth_out;
  std::string synth_layout = "wide";
  auto* synth_cmd = app.add_subcommand("synth", "Synthetic factor-model prices");
  synth_cmd->add_option("--assets,-N", spec.assets, "Number of assets");
  synth_cmd->add_option("--length,-T", spec.length, "Number of returns");
  synth_cmd->add_option("--gamma", spec.gamma, "Common-factor loading in [0, 1]");
  synth_cmd->add_option("--blocks", blocks, "Block model: size:gamma,size:gamma,...");
  synth_cmd->add_option("--seed", spec.seed, "Generator seed");
  synth_cmd->add_option("--volatility", volatility, "Per-step log-return scale of the price path");
  synth_cmd->add_option("--layout", synth_layout, "CSV layout")->check(CLI::IsMember({"wide", "long"}));
  synth_cmd->add_option("--out", synth_out, "Output CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*run) {
      const auto written = run_pipeline(to_config(f));
      for (const auto& [name, content] : written) std::cout << (std::filesystem::path(f.out) / name).string() << "\n";
    } else if (*analyze_cmd) {
      f.emit = "report,histogram,correlation";
      const RunConfig cfg = to_config(f);
      const auto c = correlation_from_prices(cfg);
      write_artifacts(cfg.out, analysis_artifacts(c, cfg));
    } else if (*cluster_cmd) {
      f.emit = "dendrogram,heatmap";
      const RunConfig cfg = to_config(f);
      const auto c = io::parse_matrix_csv(io::read_text(cfg.input), cfg.input.string());
      write_artifacts(cfg.out, cluster_artifacts(c, cfg));
    } else if (*rpr_cmd) {
      const auto c = io::parse_matrix_csv(io::read_text(f.input), f.input);
      const std::string text = rpr_json(c, f.ensemble, f.seed, f.threads);
      if (rpr_out.empty()) {
        std::cout << text;
      } else {
        io::write_atomic(rpr_out, text);
      }
    } else if (*synth_cmd) {
      if (!blocks.empty()) {
        spec.blocks = parse_blocks(blocks);
        if (synth_cmd->count("--assets") == 0) {
          spec.assets = 0;
          for (const auto& b : *spec.blocks) spec.assets += b.size;
        }
      }
      const auto panel = to_prices(generate(spec), volatility);
      io::write_atomic(synth_out, synth_layout == "long" ? io::prices_long_csv(panel) : io::prices_wide_csv(panel));
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
