#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "topf/clustering.h"
#include "topf/features.h"
#include "topf/tcbs.h"

namespace topf {

struct ExperimentConfig {
  TopfConfig topf;
  KMeansOptions kmeans;
  int repeats = 20;
  std::uint64_t seed = 1;
  // Multiplies the point counts of the generated clouds.
  double scale = 1.0;
  // Worker threads across repeats; 0 uses hardware concurrency.
  int threads = 0;
};

struct RepeatResult {
  std::uint64_t seed = 0;
  double ari = 0.0;
  double runtime_s = 0.0;
  int feature_count = 0;
  std::string error;  // empty on success

  bool ok() const { return error.empty(); }
};

struct Summary {
  int successes = 0;
  double mean_ari = 0.0;
  double std_ari = 0.0;  // sample standard deviation
  double ci95 = 0.0;     // half-width of the normal-approximation interval
  double mean_runtime_s = 0.0;
};
Summary summarize(const std::vector<RepeatResult>& repeats);

struct DatasetReport {
  BenchmarkName dataset;
  std::vector<RepeatResult> repeats;
  Summary summary;
};

struct BenchmarkReport {
  std::vector<DatasetReport> datasets;
};

// Cloud seed for a given repeat; shared by the benchmark and the sweeps so
// that a zero-perturbation cell reproduces the clean run.
std::uint64_t repeat_seed(std::uint64_t master, BenchmarkName dataset, int repeat);

// Generates the cloud, computes features, clusters with k equal to the true
// cluster count and scores against the labels of the first `scored` points
// (all points when negative). Failures are recorded in the result.
RepeatResult run_clustering(const PointCloud& pc, int clusters, int scored,
                            const ExperimentConfig& cfg, std::uint64_t seed);

BenchmarkReport run_benchmark(const std::vector<BenchmarkName>& datasets,
                              const ExperimentConfig& cfg);

// Runtime columns are written as "NA" unless `timings` is set, so reports
// stay byte-identical across runs.
std::string benchmark_csv(const BenchmarkReport& report, bool timings);
std::string benchmark_json(const BenchmarkReport& report, bool timings);

enum class PerturbationKind { kGaussian, kOutliers };
std::string_view perturbation_name(PerturbationKind kind);

struct SweepCell {
  double level = 0.0;
  std::vector<RepeatResult> repeats;
  Summary summary;
};

struct SweepReport {
  BenchmarkName dataset;
  PerturbationKind kind;
  std::vector<SweepCell> cells;
};

// For each grid level and repeat: generate the clean cloud, perturb it
// (Gaussian noise with sigma = level, or `level` outliers), and score the
// clustering on the original points only.
SweepReport robustness_sweep(BenchmarkName dataset, PerturbationKind kind,
                             const std::vector<double>& grid, const ExperimentConfig& cfg);

// "start:stop:count" (evenly spaced, inclusive) or a comma-separated list.
std::vector<double> parse_grid(std::string_view text);

std::string sweep_csv(const SweepReport& report, bool timings);
std::string sweep_json(const SweepReport& report, bool timings);

}  // namespace topf
