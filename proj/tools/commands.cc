#include "commands.h"

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "options.h"
#include "topf/error.h"
#include "topf/experiment.h"
#include "topf/log.h"
#include "topf/persistence.h"

namespace topf::cli {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void add_experiment_options(CLI::App* cmd, ExperimentConfig& cfg) {
  cmd->add_option("--repeats", cfg.repeats, "repeats per dataset or grid cell")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--seed", cfg.seed, "master seed")->capture_default_str();
  cmd->add_option("--scale", cfg.scale, "multiplies benchmark point counts")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--restarts", cfg.kmeans.restarts, "k-means restarts")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--jobs", cfg.threads, "repeats run concurrently; 0 = all cores")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  add_topf_options(cmd, cfg.topf);
}

struct FeaturesArgs {
  InputArgs input;
  TopfConfig cfg;
  std::string output = "-";
  std::string meta;
  std::string harmonic_dir;
  std::string filtration_path;
  bool no_feature_column = false;
};

int run_features(const FeaturesArgs& a) {
  const PointCloud pc = load_input(a.input);
  log_info(fmt::format("{} points in R^{}", pc.size(), pc.ambient_dim()));
  const auto start = std::chrono::steady_clock::now();
  const TopfResult res = run_topf(pc, a.cfg);
  log_info(fmt::format("{} feature columns in {:.3f} s", res.features.cols(), seconds_since(start)));

  std::ostringstream csv;
  write_feature_csv(csv, pc, res.features, a.no_feature_column);
  write_output(a.output, csv.str());

  std::string meta = a.meta;
  if (meta.empty() && a.output != "-") meta = a.output + ".json";
  if (!meta.empty()) write_output(meta, feature_meta_json(res.features));

  if (!a.filtration_path.empty()) {
    std::ostringstream out;
    write_filtration(out, res.complex);
    write_output(a.filtration_path, out.str());
  }
  if (!a.harmonic_dir.empty()) {
    std::filesystem::create_directories(a.harmonic_dir);
    for (std::size_t j = 0; j < res.harmonic.size(); ++j) {
      SnapshotComplex sc(res.complex, res.features.meta[j].t);
      std::ostringstream out;
      write_harmonic_csv(out, res.harmonic[j], sc);
      write_output((std::filesystem::path(a.harmonic_dir) / fmt::format("f{}.csv", j)).string(),
                   out.str());
    }
  }
  return 0;
}

struct PersistenceArgs {
  InputArgs input;
  TopfConfig cfg;
  std::string output = "-";
};

int run_persistence(const PersistenceArgs& a) {
  const PointCloud pc = load_input(a.input);
  if (pc.empty()) throw EmptyInputError("empty point cloud");
  const int max_dim = a.cfg.max_dim >= 0 ? a.cfg.max_dim : std::max(0, pc.ambient_dim() - 1);
  const FilteredComplex fc = build_filtration(pc, max_dim, a.cfg.complex);
  const PersistenceDiagram diag = compute_persistence(fc, std::min(max_dim, fc.dimension()));
  log_info(fmt::format("{} simplices, {} pairs", fc.size(), diag.pairs.size()));
  write_output(a.output, diagram_to_json(diag, fc) + "\n");
  return 0;
}

struct BenchmarkArgs {
  ExperimentConfig cfg;
  bool all = false;
  std::vector<std::string> datasets;
  bool timings = false;
  std::string output = "-";
  std::string json;
};

int run_benchmark_cmd(const BenchmarkArgs& a) {
  std::vector<BenchmarkName> names;
  if (a.all) {
    names = all_benchmarks();
  } else {
    for (const auto& d : a.datasets) names.push_back(benchmark_from_string(d));
  }
  const BenchmarkReport report = run_benchmark(names, a.cfg);
  write_output(a.output, benchmark_csv(report, a.timings));
  if (!a.json.empty()) write_output(a.json, benchmark_json(report, a.timings));
  int successes = 0;
  for (const auto& d : report.datasets) successes += d.summary.successes;
  return successes > 0 ? 0 : 1;
}

struct SweepArgs {
  ExperimentConfig cfg;
  std::string dataset;
  PerturbationKind kind = PerturbationKind::kGaussian;
  std::string grid;
  bool timings = false;
  std::string output = "-";
  std::string json;
};

int run_sweep_cmd(const SweepArgs& a) {
  const SweepReport report =
      robustness_sweep(benchmark_from_string(a.dataset), a.kind, parse_grid(a.grid), a.cfg);
  write_output(a.output, sweep_csv(report, a.timings));
  if (!a.json.empty()) write_output(a.json, sweep_json(report, a.timings));
  int successes = 0;
  for (const auto& c : report.cells) successes += c.summary.successes;
  return successes > 0 ? 0 : 1;
}

struct GenerateArgs {
  std::string dataset;
  std::uint64_t seed = 1;
  double scale = 1.0;
  TextFormat format = TextFormat::kCsv;
  std::string output = "-";
};

}  // namespace

void add_features_command(CLI::App& app, Action& action) {
  auto args = std::make_shared<FeaturesArgs>();
  auto* cmd = app.add_subcommand("features", "compute the per-point feature matrix");
  add_input_options(cmd, args->input);
  add_topf_options(cmd, args->cfg);
  cmd->add_option("-o,--output", args->output, "feature CSV; - for stdout")->capture_default_str();
  cmd->add_option("--meta", args->meta, "column metadata JSON [default: OUTPUT.json]");
  cmd->add_option("--harmonic-dump", args->harmonic_dir,
                  "directory for one harmonic representative CSV per column");
  cmd->add_option("--filtration-dump", args->filtration_path, "write the filtration as text");
  cmd->add_flag("--no-feature-column", args->no_feature_column,
                "append a column 'none' = 1 - row maximum");
  cmd->callback([args, &action] { action = [args] { return run_features(*args); }; });
}

void add_persistence_command(CLI::App& app, Action& action) {
  auto args = std::make_shared<PersistenceArgs>();
  auto* cmd = app.add_subcommand("persistence", "persistence diagram with F3 generators as JSON");
  add_input_options(cmd, args->input);
  add_complex_options(cmd, args->cfg);
  cmd->add_option("-o,--output", args->output, "diagram JSON; - for stdout")
      ->capture_default_str();
  cmd->callback([args, &action] { action = [args] { return run_persistence(*args); }; });
}

void add_benchmark_command(CLI::App& app, Action& action) {
  auto args = std::make_shared<BenchmarkArgs>();
  auto* cmd = app.add_subcommand("benchmark", "clustering benchmark: features, k-means, ARI");
  auto* which = cmd->add_option_group("datasets", "datasets to run (exactly one of)");
  which->add_flag("--all", args->all, "all seven datasets");
  which->add_option("-d,--dataset", args->datasets, "dataset names")
      ->check(benchmark_validator());
  which->require_option(1);
  add_experiment_options(cmd, args->cfg);
  cmd->add_flag("--timings", args->timings, "report runtimes (otherwise NA)");
  cmd->add_option("-o,--output", args->output, "summary CSV; - for stdout")
      ->capture_default_str();
  cmd->add_option("--json", args->json, "JSON report with per-repeat detail");
  cmd->callback([args, &action] { action = [args] { return run_benchmark_cmd(*args); }; });
}

void add_sweep_command(CLI::App& app, Action& action) {
  auto args = std::make_shared<SweepArgs>();
  auto* cmd = app.add_subcommand("sweep", "ARI under increasing noise or outliers");
  cmd->add_option("-d,--dataset", args->dataset, "dataset name")
      ->required()
      ->check(benchmark_validator());
  static const std::map<std::string, PerturbationKind> kKinds{
      {"gaussian", PerturbationKind::kGaussian}, {"outliers", PerturbationKind::kOutliers}};
  cmd->add_option("--kind", args->kind, "gaussian (sigma grid) or outliers (count grid)")
      ->transform(CLI::CheckedTransformer(kKinds, CLI::ignore_case))
      ->default_str("gaussian");
  cmd->add_option("--grid", args->grid, "start:stop:count or a comma-separated list")
      ->required()
      ->check(CLI::Validator(
          [](std::string& s) -> std::string {
            try {
              parse_grid(s);
              return "";
            } catch (const Error& e) {
              return e.what();
            }
          },
          "GRID"));
  add_experiment_options(cmd, args->cfg);
  cmd->add_flag("--timings", args->timings, "report runtimes (otherwise NA)");
  cmd->add_option("-o,--output", args->output, "sweep CSV; - for stdout")->capture_default_str();
  cmd->add_option("--json", args->json, "JSON report with per-repeat detail");
  cmd->callback([args, &action] { action = [args] { return run_sweep_cmd(*args); }; });
}

void add_generate_command(CLI::App& app, Action& action) {
  auto args = std::make_shared<GenerateArgs>();
  auto* cmd = app.add_subcommand("generate", "write a labelled benchmark cloud");
  cmd->add_option("-d,--dataset", args->dataset, "dataset name")
      ->required()
      ->check(benchmark_validator());
  cmd->add_option("--seed", args->seed, "generator seed")->capture_default_str();
  cmd->add_option("--scale", args->scale, "multiplies point counts")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  static const std::map<std::string, TextFormat> kFormats{{"csv", TextFormat::kCsv},
                                                          {"whitespace", TextFormat::kWhitespace}};
  cmd->add_option("--format", args->format, "csv or whitespace")
      ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case))
      ->default_str("csv");
  cmd->add_option("-o,--output", args->output, "output file; - for stdout")
      ->capture_default_str();
  cmd->callback([args, &action] {
    action = [args] {
      const PointCloud pc =
          generate_benchmark({benchmark_from_string(args->dataset), args->seed, args->scale});
      write_output(args->output, format_point_cloud(pc, args->format));
      return 0;
    };
  });
}

}  // namespace topf::cli
