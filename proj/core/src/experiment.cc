#include "topf/experiment.h"

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include <chrono>
#include <charconv>
#include <cmath>
#include <string>

#include "topf/error.h"
#include "topf/log.h"
#include "topf/parallel.h"
#include "topf/random.h"

namespace topf {

Summary summarize(const std::vector<RepeatResult>& repeats) {
  Summary s;
  double sum = 0, time = 0;
  for (const auto& r : repeats) {
    if (!r.ok()) continue;
    ++s.successes;
    sum += r.ari;
    time += r.runtime_s;
  }
  if (s.successes == 0) return s;
  s.mean_ari = sum / s.successes;
  s.mean_runtime_s = time / s.successes;
  if (s.successes > 1) {
    double ss = 0;
    for (const auto& r : repeats) {
      if (r.ok()) ss += (r.ari - s.mean_ari) * (r.ari - s.mean_ari);
    }
    s.std_ari = std::sqrt(ss / (s.successes - 1));
    s.ci95 = 1.96 * s.std_ari / std::sqrt(static_cast<double>(s.successes));
  }
  return s;
}

std::uint64_t repeat_seed(std::uint64_t master, BenchmarkName dataset, int repeat) {
  return derive_seed(master, static_cast<std::uint64_t>(dataset), static_cast<std::uint64_t>(repeat));
}

RepeatResult run_clustering(const PointCloud& pc, int clusters, int scored,
                            const ExperimentConfig& cfg, std::uint64_t seed) {
  RepeatResult r;
  r.seed = seed;
  try {
    TopfConfig tc = cfg.topf;
    tc.threads = 1;
    const auto start = std::chrono::steady_clock::now();
    FeatureMatrix fm = topf(pc, tc);
    Eigen::MatrixXd x = clustering_features(fm);
    std::vector<int> pred = kmeans(x, clusters, derive_seed(seed, 0x6b6d65616e73ULL), cfg.kmeans);
    r.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.feature_count = static_cast<int>(fm.cols());
    const std::size_t m = scored < 0 ? pc.size() : static_cast<std::size_t>(scored);
    r.ari = adjusted_rand_index(std::span<const int>(pc.labels()).first(m),
                                std::span<const int>(pred).first(m));
  } catch (const std::exception& e) {
    r.error = e.what();
    log_warning(fmt::format("repeat with seed {} failed: {}", seed, e.what()));
  }
  return r;
}

BenchmarkReport run_benchmark(const std::vector<BenchmarkName>& datasets,
                              const ExperimentConfig& cfg) {
  if (cfg.repeats < 1) throw InvalidArgumentError("repeats must be positive");
  BenchmarkReport report;
  const std::size_t per = static_cast<std::size_t>(cfg.repeats);
  std::vector<RepeatResult> results(datasets.size() * per);
  parallel_for(results.size(), [&](std::size_t task) {
    const BenchmarkName name = datasets[task / per];
    const int rep = static_cast<int>(task % per);
    const std::uint64_t seed = repeat_seed(cfg.seed, name, rep);
    PointCloud pc = generate_benchmark({name, seed, cfg.scale});
    results[task] = run_clustering(pc, benchmark_cluster_count(name), -1, cfg, seed);
    log_info(fmt::format("{} repeat {}: ARI {:.4f}", benchmark_name(name), rep, results[task].ari));
  }, cfg.threads);
  for (std::size_t d = 0; d < datasets.size(); ++d) {
    DatasetReport dr;
    dr.dataset = datasets[d];
    dr.repeats.assign(results.begin() + d * per, results.begin() + (d + 1) * per);
    dr.summary = summarize(dr.repeats);
    report.datasets.push_back(std::move(dr));
  }
  return report;
}

namespace {

std::string number_or_na(double v, bool show) { return show ? fmt::format("{}", v) : "NA"; }

nlohmann::ordered_json repeats_json(const std::vector<RepeatResult>& repeats, bool timings) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : repeats) {
    nlohmann::ordered_json o;
    o["seed"] = r.seed;
    if (r.ok()) {
      o["ari"] = r.ari;
      o["features"] = r.feature_count;
      o["runtime_s"] = timings ? nlohmann::ordered_json(r.runtime_s) : nlohmann::ordered_json(nullptr);
    } else {
      o["error"] = r.error;
    }
    arr.push_back(std::move(o));
  }
  return arr;
}

std::string first_error(const std::vector<RepeatResult>& repeats) {
  for (const auto& r : repeats) {
    if (!r.ok()) return r.error;
  }
  return "";
}

std::string csv_field(std::string s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

}  // namespace

std::string benchmark_csv(const BenchmarkReport& report, bool timings) {
  std::string out = "dataset,repeats,successes,mean_ari,std_ari,mean_runtime_s,error\n";
  for (const auto& d : report.datasets) {
    const Summary& s = d.summary;
    out += fmt::format("{},{},{},{},{},{},{}\n", benchmark_name(d.dataset), d.repeats.size(),
                       s.successes, s.mean_ari, s.std_ari, number_or_na(s.mean_runtime_s, timings),
                       csv_field(first_error(d.repeats)));
  }
  return out;
}

std::string benchmark_json(const BenchmarkReport& report, bool timings) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& d : report.datasets) {
    nlohmann::ordered_json o;
    o["dataset"] = std::string(benchmark_name(d.dataset));
    o["repeats"] = d.repeats.size();
    o["successes"] = d.summary.successes;
    o["mean_ari"] = d.summary.mean_ari;
    o["std_ari"] = d.summary.std_ari;
    o["mean_runtime_s"] =
        timings ? nlohmann::ordered_json(d.summary.mean_runtime_s) : nlohmann::ordered_json(nullptr);
    o["runs"] = repeats_json(d.repeats, timings);
    arr.push_back(std::move(o));
  }
  return arr.dump(2) + "\n";
}

std::string_view perturbation_name(PerturbationKind kind) {
  return kind == PerturbationKind::kGaussian ? "gaussian" : "outliers";
}

SweepReport robustness_sweep(BenchmarkName dataset, PerturbationKind kind,
                             const std::vector<double>& grid, const ExperimentConfig& cfg) {
  if (grid.empty()) throw InvalidArgumentError("sweep grid is empty");
  if (cfg.repeats < 1) throw InvalidArgumentError("repeats must be positive");
  for (double level : grid) {
    if (!(level >= 0) || !std::isfinite(level)) {
      throw InvalidArgumentError("sweep levels must be finite and nonnegative");
    }
  }
  const std::size_t per = static_cast<std::size_t>(cfg.repeats);
  std::vector<RepeatResult> results(grid.size() * per);
  parallel_for(results.size(), [&](std::size_t task) {
    const std::size_t cell = task / per;
    const int rep = static_cast<int>(task % per);
    const std::uint64_t seed = repeat_seed(cfg.seed, dataset, rep);
    PointCloud clean = generate_benchmark({dataset, seed, cfg.scale});
    const std::uint64_t noise_seed = derive_seed(seed, 0x6e6f697365ULL, cell);
    const double level = grid[cell];
    PointCloud pc = kind == PerturbationKind::kGaussian
                        ? add_gaussian_noise(clean, level, noise_seed)
                        : add_outliers(clean, static_cast<int>(std::lround(level)), noise_seed);
    results[task] = run_clustering(pc, benchmark_cluster_count(dataset),
                                   static_cast<int>(clean.size()), cfg, seed);
    log_info(fmt::format("{} {} {} repeat {}: ARI {:.4f}", benchmark_name(dataset),
                         perturbation_name(kind), level, rep, results[task].ari));
  }, cfg.threads);

  SweepReport report{dataset, kind, {}};
  for (std::size_t c = 0; c < grid.size(); ++c) {
    SweepCell cell;
    cell.level = grid[c];
    cell.repeats.assign(results.begin() + c * per, results.begin() + (c + 1) * per);
    cell.summary = summarize(cell.repeats);
    report.cells.push_back(std::move(cell));
  }
  return report;
}

std::vector<double> parse_grid(std::string_view text) {
  auto number = [&](std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    double v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || s.empty()) {
      throw InvalidArgumentError(fmt::format("bad grid value '{}'", s));
    }
    return v;
  };
  std::vector<double> out;
  if (text.find(':') != std::string_view::npos) {
    const auto a = text.find(':');
    const auto b = text.find(':', a + 1);
    if (b == std::string_view::npos || text.find(':', b + 1) != std::string_view::npos) {
      throw InvalidArgumentError("grid must be start:stop:count");
    }
    const double start = number(text.substr(0, a));
    const double stop = number(text.substr(a + 1, b - a - 1));
    const double count = number(text.substr(b + 1));
    if (count < 1 || count != std::floor(count)) {
      throw InvalidArgumentError("grid count must be a positive integer");
    }
    const int n = static_cast<int>(count);
    for (int i = 0; i < n; ++i) {
      out.push_back(n == 1 ? start : start + (stop - start) * i / (n - 1));
    }
    return out;
  }
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto next = text.find(',', pos);
    if (next == std::string_view::npos) next = text.size();
    out.push_back(number(text.substr(pos, next - pos)));
    pos = next + 1;
  }
  return out;
}

std::string sweep_csv(const SweepReport& report, bool timings) {
  std::string out = "dataset,kind,level,repeats,successes,mean_ari,std_ari,ci95,mean_runtime_s\n";
  for (const auto& c : report.cells) {
    const Summary& s = c.summary;
    out += fmt::format("{},{},{},{},{},{},{},{},{}\n", benchmark_name(report.dataset),
                       perturbation_name(report.kind), c.level, c.repeats.size(), s.successes,
                       s.mean_ari, s.std_ari, s.ci95, number_or_na(s.mean_runtime_s, timings));
  }
  return out;
}

std::string sweep_json(const SweepReport& report, bool timings) {
  nlohmann::ordered_json o;
  o["dataset"] = std::string(benchmark_name(report.dataset));
  o["kind"] = std::string(perturbation_name(report.kind));
  nlohmann::ordered_json cells = nlohmann::ordered_json::array();
  for (const auto& c : report.cells) {
    nlohmann::ordered_json j;
    j["level"] = c.level;
    j["repeats"] = c.repeats.size();
    j["successes"] = c.summary.successes;
    j["mean_ari"] = c.summary.mean_ari;
    j["std_ari"] = c.summary.std_ari;
    j["ci95"] = c.summary.ci95;
    j["mean_runtime_s"] =
        timings ? nlohmann::ordered_json(c.summary.mean_runtime_s) : nlohmann::ordered_json(nullptr);
    j["runs"] = repeats_json(c.repeats, timings);
    cells.push_back(std::move(j));
  }
  o["cells"] = std::move(cells);
  return o.dump(2) + "\n";
}

}  // namespace topf
