#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <tuple>

#include <nlohmann/json.hpp>

#include "oracles.h"
#include "topf/error.h"
#include "topf/filtration.h"
#include "topf/persistence.h"

namespace topf {
namespace {

using Entry = FilteredComplex::Entry;

TEST(F3, FieldArithmetic) {
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      EXPECT_EQ((F3(a) + F3(b)).value(), (a + b) % 3);
      EXPECT_EQ((F3(a) * F3(b)).value(), (a * b) % 3);
      EXPECT_EQ((F3(a) - F3(b)).value(), ((a - b) % 3 + 3) % 3);
    }
    if (a) {
      EXPECT_EQ((F3(a) * F3(a).inverse()).value(), 1);
    }
  }
  EXPECT_NE(F3(1), F3(-1));
  EXPECT_EQ(F3(-1).value(), 2);
  EXPECT_EQ(F3(2).signed_value(), -1);
}

int alive(const PersistenceDiagram& d, int k, double t) {
  int n = 0;
  for (const auto& p : d.pairs) n += (p.dim == k && p.birth <= t && t < p.death);
  return n;
}

// Checks that the generator is an F3 cycle made of simplices present at birth.
void expect_cycle(const FilteredComplex& fc, const PersistencePair& p) {
  std::map<std::vector<int>, int> boundary;
  for (const auto& [s, c] : p.generator) {
    ASSERT_EQ(fc.dim(s), p.dim);
    ASSERT_LE(fc.value(s), p.birth);
    if (p.dim == 0) continue;
    auto v = fc.vertices(s);
    for (std::size_t i = 0; i < v.size(); ++i) {
      std::vector<int> face(v.begin(), v.end());
      face.erase(face.begin() + static_cast<long>(i));
      boundary[face] += (i % 2 == 0 ? 1 : -1) * c.signed_value();
    }
  }
  for (const auto& [f, c] : boundary) EXPECT_EQ(((c % 3) + 3) % 3, 0);
  EXPECT_FALSE(p.generator.empty());
}

TEST(Persistence, UnitSquareVietorisRips) {
  PointCloud pc(2, {0, 0, 1, 0, 1, 1, 0, 1});
  FilteredComplex fc = build_vr_filtration(pc, 1);
  PersistenceDiagram d = compute_persistence(fc, 1);
  std::vector<const PersistencePair*> h1;
  for (const auto* p : d.in_dim(1))
    if (!p->zero_persistence()) h1.push_back(p);
  ASSERT_EQ(h1.size(), 1u);
  EXPECT_DOUBLE_EQ(h1[0]->birth, 1.0);
  EXPECT_DOUBLE_EQ(h1[0]->death, std::sqrt(2.0));
  EXPECT_EQ(h1[0]->generator.size(), 4u);
  expect_cycle(fc, *h1[0]);
}

TEST(Persistence, TwoDistantPoints) {
  PointCloud pc(1, {0.0, 3.5});
  FilteredComplex fc = build_vr_filtration(pc, 0);
  PersistenceDiagram d = compute_persistence(fc, 0);
  ASSERT_EQ(d.pairs.size(), 2u);
  int essential = 0;
  for (const auto& p : d.pairs) {
    EXPECT_EQ(p.birth, 0.0);
    if (p.essential()) {
      ++essential;
      EXPECT_TRUE(std::isinf(p.death));
    } else {
      EXPECT_DOUBLE_EQ(p.death, 3.5);
    }
  }
  EXPECT_EQ(essential, 1);
  EXPECT_DOUBLE_EQ(d.lifetime(d.pairs[0]), 3.5);  // essential dies at the largest value
}

TEST(Persistence, IcosahedronHasAVoid) {
  const double g = (1 + std::sqrt(5.0)) / 2;
  std::vector<double> c;
  for (double s1 : {-1.0, 1.0})
    for (double s2 : {-1.0, g * 1.0}) {
      double b = s2 < 0 ? -g : g;
      c.insert(c.end(), {0, s1, b});
      c.insert(c.end(), {s1, b, 0});
      c.insert(c.end(), {b, 0, s1});
    }
  const double norm = std::sqrt(1 + g * g);
  for (auto& x : c) x /= norm;
  PointCloud pc(3, c);
  ASSERT_EQ(pc.size(), 12u);
  FilteredComplex fc = build_alpha_filtration(pc, 2);
  // Faces of the unit icosahedron have circumradius ~0.607; every simplex
  // through the interior has a diameter of at least 1.7.
  const double t = 0.7;
  EXPECT_EQ(betti_numbers(SnapshotComplex(fc, t), 2), (std::vector<int>{1, 0, 1}));
  EXPECT_EQ(oracle::betti(fc, t, 2), (std::vector<int>{1, 0, 1}));
  PersistenceDiagram d = compute_persistence(fc, 2);
  EXPECT_EQ(alive(d, 0, t), 1);
  EXPECT_EQ(alive(d, 1, t), 0);
  EXPECT_EQ(alive(d, 2, t), 1);
  for (const auto& p : d.pairs) expect_cycle(fc, p);
}

FilteredComplex hand_complex(int vertices, const std::vector<std::vector<int>>& simplices) {
  std::vector<Entry> e;
  for (int v = 0; v < vertices; ++v) e.push_back({{v}, 0.0});
  for (const auto& s : simplices) e.push_back({s, static_cast<double>(s.size() - 1)});
  return FilteredComplex(vertices, std::move(e));
}

TEST(Betti, SmallComplexes) {
  auto hollow = hand_complex(3, {{0, 1}, {1, 2}, {0, 2}});
  EXPECT_EQ(betti_numbers(SnapshotComplex(hollow, 10), 1), (std::vector<int>{1, 1}));
  auto filled = hand_complex(3, {{0, 1}, {1, 2}, {0, 2}, {0, 1, 2}});
  EXPECT_EQ(betti_numbers(SnapshotComplex(filled, 10), 1), (std::vector<int>{1, 0}));
  auto squares = hand_complex(8, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {4, 5}, {5, 6}, {6, 7}, {4, 7}});
  EXPECT_EQ(betti_numbers(SnapshotComplex(squares, 10), 1), (std::vector<int>{2, 2}));
  EXPECT_EQ(oracle::betti(squares, 10, 1), (std::vector<int>{2, 2}));
}

TEST(Betti, F3RankAgreesWithOracle) {
  FilteredComplex fc = build_alpha_filtration(oracle::uniform_cloud(30, 3, 12), 2);
  SnapshotComplex sc(fc, 0.2);
  const auto s = oracle::sublevel(fc, 0.2);
  for (int k = 0; k < 3; ++k) {
    EXPECT_EQ(static_cast<int>(f3_rank(boundary_matrix(sc, k))),
              oracle::f3_rank(oracle::dense_boundary(s[k], s[k + 1])));
  }
}

// Pair counts alive at t equal the Betti numbers of the snapshot at t.
void check_fundamental_lemma(const FilteredComplex& fc, int max_dim, std::uint64_t seed) {
  PersistenceDiagram d = compute_persistence(fc, max_dim);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, fc.max_value() * 1.05);
  for (int r = 0; r < 20; ++r) {
    // Half the probes land exactly on filtration values.
    const double t = (r % 2) ? u(rng) : fc.value(rng() % fc.size());
    const auto b = oracle::betti(fc, t, max_dim);
    for (int k = 0; k <= max_dim; ++k) ASSERT_EQ(alive(d, k, t), b[k]) << "k=" << k << " t=" << t;
  }
  for (const auto& p : d.pairs) expect_cycle(fc, p);
}

TEST(Persistence, FundamentalLemmaAlpha) {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    check_fundamental_lemma(build_alpha_filtration(oracle::uniform_cloud(40, 2, seed), 1), 1, seed);
    check_fundamental_lemma(build_alpha_filtration(oracle::uniform_cloud(35, 3, seed), 2), 2, seed);
  }
}

TEST(Persistence, FundamentalLemmaVietorisRips) {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    check_fundamental_lemma(build_vr_filtration(oracle::uniform_cloud(18, 4, seed), 2, 0.8), 2,
                            seed);
  }
}

TEST(Persistence, EssentialH0CountsComponents) {
  std::vector<double> c;
  for (int blob = 0; blob < 3; ++blob)
    for (int i = 0; i < 10; ++i) c.insert(c.end(), {blob * 100.0 + 0.1 * i, 0.05 * (i % 3)});
  FilteredComplex fc = build_vr_filtration(PointCloud(2, c), 1, 5.0);
  PersistenceDiagram d = compute_persistence(fc, 1);
  int essential = 0;
  for (const auto* p : d.in_dim(0)) essential += p->essential();
  EXPECT_EQ(essential, 3);
}

std::vector<std::tuple<int, double, double>> signature(const PersistenceDiagram& d) {
  std::vector<std::tuple<int, double, double>> s;
  for (const auto& p : d.pairs) s.emplace_back(p.dim, p.birth, p.death);
  std::sort(s.begin(), s.end());
  return s;
}

TEST(Persistence, IndependentOfTieBreaking) {
  // A grid has many equal distances; relabelling the points changes the
  // lexicographic order among ties.
  std::vector<double> c;
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) c.insert(c.end(), {double(x), double(y)});
  PointCloud pc(2, c);
  std::vector<std::size_t> perm(pc.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937_64 rng(3);
  std::shuffle(perm.begin(), perm.end(), rng);
  for (ComplexKind kind : {ComplexKind::kVietorisRips, ComplexKind::kAlpha}) {
    ComplexOptions opts;
    opts.kind = kind;
    opts.max_radius = 2.0;
    auto a = compute_persistence(build_filtration(pc, 1, opts), 1);
    auto b = compute_persistence(build_filtration(pc.permuted(perm), 1, opts), 1);
    EXPECT_EQ(signature(a), signature(b));
  }
}

TEST(Persistence, MaxDimBeyondComplexIsAnError) {
  FilteredComplex fc = build_vr_filtration(PointCloud(1, {0, 1}), 0);
  EXPECT_THROW(compute_persistence(fc, 2), InvalidArgumentError);
}

TEST(Persistence, JsonLayout) {
  FilteredComplex fc = build_vr_filtration(PointCloud(1, {0.0, 2.0}), 0);
  auto j = nlohmann::json::parse(diagram_to_json(compute_persistence(fc, 0), fc));
  ASSERT_EQ(j.size(), 2u);
  EXPECT_EQ(j[0]["dim"], 0);
  EXPECT_TRUE(j[0]["death"].is_null());
  EXPECT_EQ(j[1]["death"], 2.0);
  EXPECT_EQ(j[1]["generator"][0][0], nlohmann::json::array({1}));
  EXPECT_EQ(j[1]["generator"][0][1], 1);
  EXPECT_EQ(diagram_to_json(compute_persistence(fc, 0), fc).find("\"dim\""), 2u);
}

}  // namespace
}  // namespace topf
