#include <gtest/gtest.h>

#include <random>

#include <nlohmann/json.hpp>

#include "topf/clustering.h"
#include "topf/error.h"
#include "topf/experiment.h"

namespace topf {
namespace {

// ARI from the four pair counts, by brute force over all pairs.
double ari_by_pairs(const std::vector<int>& a, const std::vector<int>& b) {
  double n11 = 0, n00 = 0, n10 = 0, n01 = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      const bool sa = a[i] == a[j], sb = b[i] == b[j];
      if (sa && sb) ++n11;
      else if (!sa && !sb) ++n00;
      else if (sa) ++n10;
      else ++n01;
    }
  }
  const double den = (n00 + n01) * (n01 + n11) + (n00 + n10) * (n10 + n11);
  return den == 0 ? 1.0 : 2 * (n00 * n11 - n01 * n10) / den;
}

TEST(Ari, Examples) {
  const std::vector<int> a{0, 0, 1, 1}, b{0, 1, 0, 1}, c{5, 5, 2, 2};
  EXPECT_NEAR(adjusted_rand_index(a, b), -0.5, 1e-12);
  EXPECT_DOUBLE_EQ(adjusted_rand_index(a, a), 1.0);
  EXPECT_DOUBLE_EQ(adjusted_rand_index(a, c), 1.0);
  EXPECT_THROW(adjusted_rand_index(a, std::vector<int>{0, 1}), InvalidArgumentError);
}

TEST(Ari, MatchesPairCountsAndIsSymmetric) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 40);
    const int ka = 1 + static_cast<int>(rng() % 5), kb = 1 + static_cast<int>(rng() % 5);
    std::vector<int> a(n), b(n);
    for (int i = 0; i < n; ++i) {
      a[i] = static_cast<int>(rng() % ka);
      // Correlated half the time.
      b[i] = (rng() % 2) ? a[i] : static_cast<int>(rng() % kb);
    }
    const double x = adjusted_rand_index(a, b);
    EXPECT_NEAR(x, ari_by_pairs(a, b), 1e-12);
    EXPECT_DOUBLE_EQ(x, adjusted_rand_index(b, a));
  }
}

TEST(Ari, RandomLabelingsAverageZero) {
  std::mt19937_64 rng(2);
  double sum = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> a(100), b(100);
    for (int i = 0; i < 100; ++i) {
      a[i] = static_cast<int>(rng() % 3);
      b[i] = static_cast<int>(rng() % 3);
    }
    sum += adjusted_rand_index(a, b);
  }
  EXPECT_LT(std::abs(sum / 200), 0.05);
}

Eigen::MatrixXd two_blobs(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 0.1);
  Eigen::MatrixXd x(2 * n, 1);
  for (int i = 0; i < 2 * n; ++i) x(i, 0) = (i < n ? 0.0 : 10.0) + g(rng);
  return x;
}

TEST(KMeans, SplitsTwoBlobs) {
  Eigen::MatrixXd x = two_blobs(30, 1);
  std::vector<int> l = kmeans(x, 2, 7);
  ASSERT_EQ(l.size(), 60u);
  for (int i = 1; i < 30; ++i) EXPECT_EQ(l[i], l[0]);
  for (int i = 31; i < 60; ++i) EXPECT_EQ(l[i], l[30]);
  EXPECT_NE(l[0], l[30]);
}

TEST(KMeans, SingleCluster) {
  std::vector<int> l = kmeans(two_blobs(10, 2), 1, 3);
  for (int v : l) EXPECT_EQ(v, 0);
}

TEST(KMeans, DeterministicGivenSeed) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Eigen::MatrixXd x(200, 3);
  for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = u(rng);
  EXPECT_EQ(kmeans(x, 5, 11), kmeans(x, 5, 11));
}

TEST(KMeans, Errors) {
  Eigen::MatrixXd x = two_blobs(2, 1);
  EXPECT_THROW(kmeans(x, 5, 1), InvalidArgumentError);
  EXPECT_THROW(kmeans(x, 0, 1), InvalidArgumentError);
}

TEST(Grid, Syntax) {
  EXPECT_EQ(parse_grid("0:0.1:3"), (std::vector<double>{0, 0.05, 0.1}));
  EXPECT_EQ(parse_grid("0.5:1:1"), (std::vector<double>{0.5}));
  EXPECT_EQ(parse_grid("0, 10,20"), (std::vector<double>{0, 10, 20}));
  EXPECT_EQ(parse_grid("3"), (std::vector<double>{3}));
  EXPECT_THROW(parse_grid(""), InvalidArgumentError);
  EXPECT_THROW(parse_grid("0:1"), InvalidArgumentError);
  EXPECT_THROW(parse_grid("0:1:2.5"), InvalidArgumentError);
  EXPECT_THROW(parse_grid("1,x"), InvalidArgumentError);
}

TEST(Summary, MeanStdAndInterval) {
  std::vector<RepeatResult> r(4);
  const double v[] = {0.5, 0.7, 0.9, 0.0};
  for (int i = 0; i < 4; ++i) r[i].ari = v[i];
  r[3].error = "failed";
  Summary s = summarize(r);
  EXPECT_EQ(s.successes, 3);
  EXPECT_NEAR(s.mean_ari, 0.7, 1e-12);
  EXPECT_NEAR(s.std_ari, 0.2, 1e-12);
  EXPECT_NEAR(s.ci95, 1.96 * 0.2 / std::sqrt(3.0), 1e-12);
}

ExperimentConfig small_config(int repeats) {
  ExperimentConfig cfg;
  cfg.repeats = repeats;
  cfg.seed = 5;
  cfg.threads = 1;
  return cfg;
}

TEST(Benchmark, ReproducibleAndWellFormed) {
  const ExperimentConfig cfg = small_config(1);
  BenchmarkReport a = run_benchmark({BenchmarkName::kEllipses}, cfg);
  BenchmarkReport b = run_benchmark({BenchmarkName::kEllipses}, cfg);
  EXPECT_EQ(benchmark_csv(a, false), benchmark_csv(b, false));
  EXPECT_EQ(benchmark_json(a, false), benchmark_json(b, false));
  ASSERT_EQ(a.datasets.size(), 1u);
  EXPECT_EQ(a.datasets[0].summary.successes, 1);

  const std::string csv = benchmark_csv(a, false);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "dataset,repeats,successes,mean_ari,std_ari,mean_runtime_s,error");
  EXPECT_NE(csv.find(",NA,"), std::string::npos);
  auto j = nlohmann::json::parse(benchmark_json(a, false));
  EXPECT_TRUE(j.dump().find("runtime") != std::string::npos);
  EXPECT_EQ(benchmark_csv(a, true).find(",NA,"), std::string::npos);
}

TEST(Benchmark, RejectsZeroRepeats) {
  EXPECT_THROW(run_benchmark({BenchmarkName::kEllipses}, small_config(0)), InvalidArgumentError);
}

TEST(Sweep, ZeroPerturbationReproducesCleanRun) {
  const ExperimentConfig cfg = small_config(2);
  BenchmarkReport clean = run_benchmark({BenchmarkName::kEllipses}, cfg);
  for (PerturbationKind kind : {PerturbationKind::kGaussian, PerturbationKind::kOutliers}) {
    SweepReport s = robustness_sweep(BenchmarkName::kEllipses, kind, {0.0}, cfg);
    ASSERT_EQ(s.cells.size(), 1u);
    ASSERT_EQ(s.cells[0].repeats.size(), 2u);
    for (int r = 0; r < 2; ++r) {
      EXPECT_EQ(s.cells[0].repeats[r].ari, clean.datasets[0].repeats[r].ari);
      EXPECT_EQ(s.cells[0].repeats[r].seed, clean.datasets[0].repeats[r].seed);
    }
  }
}

TEST(Sweep, TinyNoiseStaysCloseToClean) {
  const ExperimentConfig cfg = small_config(3);
  SweepReport s = robustness_sweep(BenchmarkName::kEllipses, PerturbationKind::kGaussian,
                                   {0.0, 1e-3}, cfg);
  EXPECT_NEAR(s.cells[1].summary.mean_ari, s.cells[0].summary.mean_ari, 0.1);
}

TEST(Sweep, OutliersScoredOnOriginalPoints) {
  SweepReport s = robustness_sweep(BenchmarkName::kEllipses, PerturbationKind::kOutliers, {25},
                                   small_config(1));
  ASSERT_EQ(s.cells.size(), 1u);
  EXPECT_TRUE(s.cells[0].repeats[0].ok()) << s.cells[0].repeats[0].error;
  const std::string csv = sweep_csv(s, false);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "dataset,kind,level,repeats,successes,mean_ari,std_ari,ci95,mean_runtime_s");
  EXPECT_NE(csv.find("Ellipses,outliers,25,1,1,"), std::string::npos);
  EXPECT_NO_THROW(nlohmann::json::parse(sweep_json(s, false)));
}

TEST(Sweep, Errors) {
  EXPECT_THROW(robustness_sweep(BenchmarkName::kEllipses, PerturbationKind::kGaussian, {},
                                small_config(1)),
               InvalidArgumentError);
  EXPECT_THROW(robustness_sweep(BenchmarkName::kEllipses, PerturbationKind::kGaussian, {-1.0},
                                small_config(1)),
               InvalidArgumentError);
}

}  // namespace
}  // namespace topf
