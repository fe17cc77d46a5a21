#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <map>
#include <set>

#include "topf/error.h"
#include "topf/point_cloud.h"
#include "topf/tcbs.h"

namespace topf {
namespace {

TEST(PointCloud, ParsesCsv) {
  PointCloud pc = parse_point_cloud("0,0\n1,0\n0,1");
  EXPECT_EQ(pc.size(), 3u);
  EXPECT_EQ(pc.ambient_dim(), 2);
  EXPECT_FALSE(pc.has_labels());
  EXPECT_EQ(pc.coord(1, 0), 1.0);
}

TEST(PointCloud, ParsesWhitespaceWithLabels) {
  PointCloud pc = parse_point_cloud("0 0 3\n1.5\t0 4\n", {TextFormat::kWhitespace, true});
  EXPECT_EQ(pc.size(), 2u);
  EXPECT_EQ(pc.ambient_dim(), 2);
  ASSERT_TRUE(pc.has_labels());
  EXPECT_EQ(pc.labels(), (std::vector<int>{3, 4}));
}

TEST(PointCloud, RejectsNanWithLineNumber) {
  try {
    parse_point_cloud("0,0\n1,nan\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
  }
}

TEST(PointCloud, RejectsMalformedToken) {
  EXPECT_THROW(parse_point_cloud("0,0\n1,x\n"), ParseError);
}

TEST(PointCloud, RejectsInconsistentColumns) {
  EXPECT_THROW(parse_point_cloud("0,0\n1,0,2\n"), FormatError);
}

TEST(PointCloud, RejectsEmptyInput) {
  EXPECT_THROW(parse_point_cloud(""), EmptyInputError);
  EXPECT_THROW(parse_point_cloud("\n  \n"), EmptyInputError);
}

TEST(PointCloud, ConstructorValidates) {
  EXPECT_THROW(PointCloud(2, {0.0, 1.0, 2.0}), FormatError);
  EXPECT_THROW(PointCloud(1, {0.0, INFINITY}), InvalidArgumentError);
  EXPECT_THROW(PointCloud(1, {0.0, 1.0}, std::vector<int>{1}), InvalidArgumentError);
}

TEST(PointCloud, SaveLoadRoundTripBothFormats) {
  PointCloud pc = generate_benchmark({BenchmarkName::kFourSpheres, 1, 1.0});
  const auto dir = std::filesystem::temp_directory_path();
  for (TextFormat f : {TextFormat::kCsv, TextFormat::kWhitespace}) {
    const auto path = (dir / (f == TextFormat::kCsv ? "topf_rt.csv" : "topf_rt.txt")).string();
    save_point_cloud(pc, path, f);
    PointCloud back = load_point_cloud(path, {f, true});
    EXPECT_EQ(back, pc);
    std::filesystem::remove(path);
  }
}

TEST(Tcbs, ReferenceSizesAndDimensions) {
  const std::map<BenchmarkName, std::pair<std::size_t, int>> expected{
      {BenchmarkName::kFourSpheres, {656, 2}},
      {BenchmarkName::kEllipses, {158, 2}},
      {BenchmarkName::kSpheresGrid, {866, 2}},
      {BenchmarkName::kHalvedCircle, {249, 2}},
      {BenchmarkName::kTwoSpheresTwoCircles, {4600, 3}},
      {BenchmarkName::kSphereInCircle, {267, 3}},
      {BenchmarkName::kSpaceship, {650, 3}},
  };
  ASSERT_EQ(all_benchmarks().size(), 7u);
  for (BenchmarkName name : all_benchmarks()) {
    PointCloud pc = generate_benchmark({name, 1, 1.0});
    EXPECT_EQ(pc.size(), expected.at(name).first) << benchmark_name(name);
    EXPECT_EQ(pc.ambient_dim(), expected.at(name).second) << benchmark_name(name);
    ASSERT_TRUE(pc.has_labels());
    EXPECT_EQ(pc.label_count(), benchmark_cluster_count(name)) << benchmark_name(name);
  }
}

TEST(Tcbs, Deterministic) {
  PointCloud a = generate_benchmark({BenchmarkName::kEllipses, 7, 1.0});
  PointCloud b = generate_benchmark({BenchmarkName::kEllipses, 7, 1.0});
  EXPECT_EQ(a, b);
  PointCloud c = generate_benchmark({BenchmarkName::kEllipses, 8, 1.0});
  EXPECT_NE(a, c);
}

TEST(Tcbs, ScaleMultipliesCounts) {
  PointCloud pc = generate_benchmark({BenchmarkName::kTwoSpheresTwoCircles, 1, 0.25});
  EXPECT_NEAR(static_cast<double>(pc.size()), 1150.0, 10.0);
}

TEST(Tcbs, NameParsing) {
  EXPECT_EQ(parse_benchmark_name("2Spheres2Circles"), BenchmarkName::kTwoSpheresTwoCircles);
  EXPECT_EQ(parse_benchmark_name("sphereincircle"), BenchmarkName::kSphereInCircle);
  EXPECT_EQ(parse_benchmark_name("4spheres"), BenchmarkName::kFourSpheres);
  EXPECT_FALSE(parse_benchmark_name("Torus").has_value());
  EXPECT_THROW(benchmark_from_string("Torus"), InvalidArgumentError);
  for (BenchmarkName n : all_benchmarks()) EXPECT_EQ(parse_benchmark_name(benchmark_name(n)), n);
}

TEST(Noise, ZeroSigmaIsIdentity) {
  PointCloud pc = generate_benchmark({BenchmarkName::kEllipses, 1, 1.0});
  EXPECT_EQ(add_gaussian_noise(pc, 0.0, 5), pc);
}

TEST(Noise, DeterministicAndValidated) {
  PointCloud pc = generate_benchmark({BenchmarkName::kEllipses, 1, 1.0});
  EXPECT_EQ(add_gaussian_noise(pc, 0.1, 5), add_gaussian_noise(pc, 0.1, 5));
  EXPECT_NE(add_gaussian_noise(pc, 0.1, 5), add_gaussian_noise(pc, 0.1, 6));
  EXPECT_THROW(add_gaussian_noise(pc, -0.1, 5), InvalidArgumentError);
  EXPECT_EQ(add_gaussian_noise(pc, 0.1, 5).labels(), pc.labels());
}

TEST(Noise, MeanDisplacementWithinThreeSigmaOverRootN) {
  const int n = 10000;
  const double sigma = 0.5;
  PointCloud pc(2, std::vector<double>(2 * n, 1.0));
  PointCloud noisy = add_gaussian_noise(pc, sigma, 42);
  for (int a = 0; a < 2; ++a) {
    double mean = 0, sq = 0;
    for (int i = 0; i < n; ++i) {
      double d = noisy.coord(i, a) - 1.0;
      mean += d;
      sq += d * d;
    }
    mean /= n;
    EXPECT_LT(std::abs(mean), 3 * sigma / std::sqrt(n));
    EXPECT_NEAR(std::sqrt(sq / n), sigma, 0.05 * sigma);
  }
}

TEST(Outliers, CardinalityAndLabels) {
  PointCloud base = generate_benchmark({BenchmarkName::kSphereInCircle, 1, 1.0});
  PointCloud pc(3, std::vector<double>(base.coords().begin(), base.coords().begin() + 600),
                std::vector<int>(base.labels().begin(), base.labels().begin() + 200));
  EXPECT_EQ(add_outliers(pc, 0, 3), pc);
  PointCloud out = add_outliers(pc, 50, 3);
  ASSERT_EQ(out.size(), 250u);
  int outliers = 0;
  for (int l : out.labels()) outliers += (l == kOutlierLabel);
  EXPECT_EQ(outliers, 50);
  for (std::size_t i = 0; i < 200; ++i) {
    EXPECT_EQ(out.labels()[i], pc.labels()[i]);
    EXPECT_EQ(out.coord(i, 0), pc.coord(i, 0));
  }
}

TEST(Outliers, EmptyCloudRejected) {
  EXPECT_THROW(add_outliers(PointCloud(), 5, 1), Error);
}

TEST(Outliers, StdMatchesCloudPerAxis) {
  // Anisotropic cloud: axis 0 spread 4, axis 1 spread 0.5.
  std::vector<double> c;
  for (int i = 0; i < 400; ++i) {
    c.push_back(4.0 * std::cos(0.37 * i) + 10);
    c.push_back(0.5 * std::sin(1.91 * i) - 3);
  }
  PointCloud pc(2, c);
  const int count = 10000;
  PointCloud out = add_outliers(pc, count, 11);
  for (int a = 0; a < 2; ++a) {
    auto stats = [&](std::size_t from, std::size_t to) {
      double m = 0, s = 0;
      for (std::size_t i = from; i < to; ++i) m += out.coord(i, a);
      m /= static_cast<double>(to - from);
      for (std::size_t i = from; i < to; ++i) s += (out.coord(i, a) - m) * (out.coord(i, a) - m);
      return std::pair{m, std::sqrt(s / static_cast<double>(to - from))};
    };
    auto [cm, cs] = stats(0, 400);
    auto [om, os] = stats(400, 400 + count);
    EXPECT_NEAR(os / cs, 1.0, 0.2) << "axis " << a;
    EXPECT_NEAR(om, cm, 4 * cs / std::sqrt(count)) << "axis " << a;
  }
}

}  // namespace
}  // namespace topf
