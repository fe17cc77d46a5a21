#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "topf/error.h"
#include "topf/selection.h"

namespace topf {
namespace {

// Diagram with one pair per (dim, birth, death); death < 0 marks an
// essential class.
PersistenceDiagram make_diagram(const std::vector<std::tuple<int, double, double>>& pairs,
                                double max_value) {
  PersistenceDiagram d;
  d.max_value = max_value;
  int id = 0;
  for (auto [k, b, e] : pairs) {
    PersistencePair p;
    p.dim = k;
    p.birth = b;
    p.birth_simplex = id++;
    if (e >= 0) {
      p.death = e;
      p.death_simplex = id++;
    }
    d.max_dim = std::max(d.max_dim, k);
    d.pairs.push_back(p);
  }
  return d;
}

TEST(DropOff, HandExample) {
  const std::vector<double> l{8, 4, 0.4, 0.3};
  const auto q = drop_off_quotients(l, 0.0);
  ASSERT_EQ(q.size(), 3u);
  EXPECT_DOUBLE_EQ(q[0], 0.5);
  EXPECT_DOUBLE_EQ(q[1], 0.1);
  EXPECT_DOUBLE_EQ(q[2], 0.75);
  EXPECT_EQ(drop_off_cut(l, 0.0), 2);
  EXPECT_EQ(drop_off_cut(l, 0.0, 0.1), 2);
}

TEST(DropOff, SingleClassIsKept) {
  EXPECT_EQ(drop_off_cut({3.0}, 0.0), 1);
  EXPECT_EQ(drop_off_cut({}, 0.0), 0);
}

TEST(DropOff, NoSteepDropFallsBackToSmallestQuotient) {
  const std::vector<double> l{10, 9.5, 9, 8.8};
  const auto q = drop_off_quotients(l, 0.0);
  EXPECT_GT(*std::min_element(q.begin(), q.end()), 0.1);
  EXPECT_NEAR(q[1], 0.947, 1e-3);
  EXPECT_EQ(drop_off_cut(l, 0.0, 0.1), 2);
}

TEST(DropOff, BetaPenalisesEarlyCuts) {
  const std::vector<double> l{10, 4, 1, 0.3};
  EXPECT_DOUBLE_EQ(drop_off_quotients(l, 1.0)[0], 0.4 * 2.0);
  EXPECT_DOUBLE_EQ(drop_off_quotients(l, 1.0)[2], 0.3 * (1.0 + 1.0 / 3.0));
}

std::vector<double> random_lifetimes(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> n(1, 12);
  std::exponential_distribution<double> e(1.0);
  std::vector<double> l(n(rng));
  for (auto& x : l) x = e(rng) + 1e-3;
  std::sort(l.rbegin(), l.rend());
  return l;
}

TEST(DropOff, ScaleInvariant) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 300; ++trial) {
    auto l = random_lifetimes(rng);
    auto scaled = l;
    for (auto& x : scaled) x *= 37.5;
    EXPECT_EQ(drop_off_cut(l, 0.5, 0.1), drop_off_cut(scaled, 0.5, 0.1));
  }
}

TEST(DropOff, BetaZeroIsPlainArgmin) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 300; ++trial) {
    auto l = random_lifetimes(rng);
    if (l.size() < 2) continue;
    std::size_t best = 0;
    for (std::size_t i = 1; i + 1 < l.size(); ++i)
      if (l[i + 1] / l[i] < l[best + 1] / l[best]) best = i;
    EXPECT_EQ(drop_off_cut(l, 0.0), static_cast<int>(best) + 1);
  }
}

TEST(DropOff, MonotoneInBeta) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    auto l = random_lifetimes(rng);
    int prev = 0;
    for (double beta : {0.0, 0.1, 0.5, 1.0, 2.0, 5.0, 20.0}) {
      const int n = drop_off_cut(l, beta, 0.1);
      EXPECT_GE(n, prev);
      prev = n;
    }
  }
}

TEST(Select, PerDimensionCutsAndGuards) {
  // H0: one essential class and a tail; H1: two loops then noise.
  auto d = make_diagram({{0, 0, -1},
                         {0, 0, 0.05},
                         {0, 0, 0.04},
                         {1, 0.1, 2.1},
                         {1, 0.2, 1.7},
                         {1, 0.3, 0.35},
                         {1, 0.5, 0.52}},
                        10.0);
  FeatureSet fs = select_features(d, {}, {0, 1});
  ASSERT_EQ(fs.features.size(), 3u);
  EXPECT_EQ(fs.features[0].dim, 0);
  EXPECT_TRUE(fs.features[0].essential);
  EXPECT_DOUBLE_EQ(fs.features[0].death, 10.0);
  EXPECT_DOUBLE_EQ(fs.features[0].lifetime, 10.0);
  EXPECT_EQ(fs.features[1].dim, 1);
  EXPECT_NEAR(fs.features[1].lifetime, 2.0, 1e-12);
  EXPECT_NEAR(fs.features[2].lifetime, 1.5, 1e-12);
  EXPECT_EQ(fs.features[2].index, 1);
  EXPECT_NEAR(fs.features[2].cut_quotient, 0.05 / 1.5, 1e-12);
}

TEST(Select, MinZeroRatioDropsWeakComponents) {
  // The H0 class lives 4x the loop: below min_0_ratio = 5.
  auto d = make_diagram({{0, 0, -1}, {1, 1.0, 2.0}}, 4.0);
  FeatureSet fs = select_features(d, {}, {0, 1});
  ASSERT_EQ(fs.features.size(), 1u);
  EXPECT_EQ(fs.features[0].dim, 1);
  SelectionParams loose;
  loose.min_0_ratio = 3.0;
  EXPECT_EQ(select_features(d, loose, {0, 1}).features.size(), 2u);
}

TEST(Select, MaxTotalQuotDropsWeakDimensions) {
  // A void 20x shorter than the loop is dropped; at 5x it survives.
  auto weak = make_diagram({{1, 0, 2.0}, {2, 0.5, 0.6}}, 3.0);
  FeatureSet fs = select_features(weak, {}, {1, 2});
  ASSERT_EQ(fs.features.size(), 1u);
  EXPECT_EQ(fs.features[0].dim, 1);
  auto strong = make_diagram({{1, 0, 2.0}, {2, 0.5, 0.9}}, 3.0);
  EXPECT_EQ(select_features(strong, {}, {1, 2}).features.size(), 2u);
}

TEST(Select, ZeroPersistenceIgnoredAndEmptyIsNotAnError) {
  auto d = make_diagram({{1, 0.5, 0.5}, {1, 0.7, 0.7}}, 1.0);
  EXPECT_TRUE(select_features(d, {}, {1}).features.empty());
}

TEST(Select, UnrequestedDimensionsIgnored) {
  auto d = make_diagram({{0, 0, -1}, {1, 0.1, 0.9}}, 1.0);
  FeatureSet fs = select_features(d, {}, {1});
  ASSERT_EQ(fs.features.size(), 1u);
  EXPECT_EQ(fs.features[0].dim, 1);
}

TEST(Select, ScaleInvariantOnDiagrams) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::tuple<int, double, double>> pairs{{0, 0, -1}};
    for (int i = 0; i < 15; ++i) {
      int k = static_cast<int>(rng() % 3);
      double b = u(rng);
      pairs.emplace_back(k, b, b + u(rng) * u(rng));
    }
    auto scaled = pairs;
    for (auto& [k, b, e] : scaled) {
      b *= 3.0;
      if (e >= 0) e *= 3.0;
    }
    auto a = select_features(make_diagram(pairs, 2.0), {}, {0, 1, 2});
    auto s = select_features(make_diagram(scaled, 6.0), {}, {0, 1, 2});
    ASSERT_EQ(a.features.size(), s.features.size());
    for (std::size_t i = 0; i < a.features.size(); ++i) {
      EXPECT_EQ(a.features[i].pair->birth_simplex, s.features[i].pair->birth_simplex);
    }
  }
}

TEST(Select, RejectsBadParameters) {
  auto d = make_diagram({{1, 0, 1}}, 1.0);
  SelectionParams p;
  p.beta = -1;
  EXPECT_THROW(select_features(d, p, {1}), InvalidArgumentError);
  p = {};
  p.min_rel_quot = 0;
  EXPECT_THROW(select_features(d, p, {1}), InvalidArgumentError);
}

}  // namespace
}  // namespace topf
