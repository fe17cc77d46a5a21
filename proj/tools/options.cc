#include "options.h"

#include <fmt/format.h>

#include <fstream>
#include <iostream>
#include <map>

#include "topf/error.h"

namespace topf::cli {

namespace {

CLI::Validator half_open_unit(const char* name) {
  return CLI::Validator(
      [name](std::string& s) -> std::string {
        double v = std::stod(s);
        return (v >= 0 && v < 1) ? "" : fmt::format("{} must lie in [0, 1)", name);
      },
      "[0,1)");
}

}  // namespace

CLI::Validator benchmark_validator() {
  return CLI::Validator(
      [](std::string& s) -> std::string {
        return parse_benchmark_name(s) ? "" : fmt::format("unknown dataset '{}'", s);
      },
      "DATASET");
}

void add_input_options(CLI::App* cmd, InputArgs& args) {
  auto* group = cmd->add_option_group("input", "point cloud source (exactly one)");
  group->add_option("-i,--input", args.path, "point file, one point per row")
      ->check(CLI::ExistingFile);
  group->add_option("-b,--bench", args.bench, "generate a benchmark cloud by name")
      ->check(benchmark_validator());
  group->require_option(1);

  static const std::map<std::string, TextFormat> kFormats{{"csv", TextFormat::kCsv},
                                                          {"whitespace", TextFormat::kWhitespace}};
  cmd->add_option("--format", args.format, "input format: csv or whitespace")
      ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case))
      ->default_str("csv");
  cmd->add_flag("--label-column", args.label_column, "last input column is an integer label");
  cmd->add_option("--seed", args.seed, "generator seed")->capture_default_str();
  cmd->add_option("--scale", args.scale, "multiplies benchmark point counts")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

PointCloud load_input(const InputArgs& args) {
  if (!args.bench.empty()) {
    return generate_benchmark({benchmark_from_string(args.bench), args.seed, args.scale});
  }
  return load_point_cloud(args.path, {args.format, args.label_column});
}

void add_complex_options(CLI::App* cmd, TopfConfig& cfg) {
  cmd->add_option("--max-dim", cfg.max_dim, "highest homology dimension; -1 = ambient dim - 1")
      ->check(CLI::Range(-1, 64))
      ->capture_default_str();
  static const std::map<std::string, ComplexKind> kKinds{{"auto", ComplexKind::kAuto},
                                                         {"alpha", ComplexKind::kAlpha},
                                                         {"vr", ComplexKind::kVietorisRips}};
  cmd->add_option("--complex", cfg.complex.kind,
                  "auto (alpha in 2D/3D, Vietoris-Rips otherwise), alpha or vr")
      ->transform(CLI::CheckedTransformer(kKinds, CLI::ignore_case))
      ->default_str("auto");
  cmd->add_option_function<double>(
         "--max-radius", [&cfg](double r) { cfg.complex.max_radius = r; },
         "Vietoris-Rips cutoff on simplex diameter [default: none]")
      ->check(CLI::PositiveNumber);
  static const std::map<std::string, AlphaRule> kRules{
      {"gabriel", AlphaRule::kGabriel}, {"circumradius", AlphaRule::kCircumradius}};
  cmd->add_option("--alpha-rule", cfg.complex.alpha_rule,
                  "alpha values: gabriel (smallest empty sphere) or circumradius")
      ->transform(CLI::CheckedTransformer(kRules, CLI::ignore_case))
      ->default_str("gabriel");
  cmd->add_option("--simplex-budget", cfg.complex.budget, "maximum Vietoris-Rips simplices")
      ->capture_default_str();
}

void add_topf_options(CLI::App* cmd, TopfConfig& cfg) {
  add_complex_options(cmd, cfg);
  cmd->add_option("--lambda", cfg.interpolation.lambda, "interpolation between birth and death")
      ->check(half_open_unit("lambda"))
      ->capture_default_str();
  cmd->add_flag_callback(
      "--linear-interp", [&cfg] { cfg.interpolation.kind = InterpolationKind::kLinear; },
      "use (1 - lambda) b + lambda d instead of b^(1 - lambda) d^lambda");
  cmd->add_option("--delta", cfg.delta, "threshold fraction of the largest harmonic value")
      ->check(CLI::Range(0.0, 1.0) & CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--beta", cfg.selection.beta, "drop-off quotient index penalty")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--min-rel-quot", cfg.selection.min_rel_quot,
                  "smallest lifetime kept, relative to the longest in its dimension")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--max-total-quot", cfg.selection.max_total_quot,
                  "largest lifetime ratio across positive dimensions")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--min-0-ratio", cfg.selection.min_0_ratio,
                  "dimension-0 classes must outlive higher ones by this factor")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  static const std::map<std::string, WeightScheme> kWeights{
      {"none", WeightScheme::kUnweighted},
      {"triangle", WeightScheme::kTriangle},
      {"effres", WeightScheme::kEffectiveResistance}};
  cmd->add_option("--weights", cfg.weights, "simplicial weights: none, triangle or effres")
      ->transform(CLI::CheckedTransformer(kWeights, CLI::ignore_case))
      ->default_str("triangle");
  cmd->add_option("--resistance-budget", cfg.resistance_budget,
                  "largest snapshot (k-simplices) for effres weights")
      ->capture_default_str();
  cmd->add_option("--threads", cfg.threads, "worker threads; 0 = all cores")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(fmt::format("cannot open '{}' for writing", path));
  out << content;
  if (!out) throw Error(fmt::format("write to '{}' failed", path));
  std::cout << path << '\n';
}

}  // namespace topf::cli
