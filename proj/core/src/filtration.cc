#include "topf/filtration.h"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>

#include "topf/delaunay.h"
#include "topf/error.h"
#include "topf/geometry.h"

namespace topf {

namespace {

bool lex_less(std::span<const int> a, std::span<const int> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

FilteredComplex::FilteredComplex(int vertex_count, std::vector<Entry> simplices)
    : vertex_count_(vertex_count) {
  for (const auto& e : simplices) {
    if (e.vertices.empty()) throw ConsistencyError("empty simplex");
    for (std::size_t j = 0; j < e.vertices.size(); ++j) {
      if (e.vertices[j] < 0 || e.vertices[j] >= vertex_count) {
        throw ConsistencyError("simplex vertex out of range");
      }
      if (j > 0 && e.vertices[j - 1] >= e.vertices[j]) {
        throw ConsistencyError("simplex vertices must be strictly increasing");
      }
    }
    if (!std::isfinite(e.value) || e.value < 0) {
      throw ConsistencyError("filtration values must be finite and nonnegative");
    }
  }
  std::vector<std::size_t> order(simplices.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& x = simplices[a];
    const auto& y = simplices[b];
    if (x.value != y.value) return x.value < y.value;
    if (x.vertices.size() != y.vertices.size()) {
      return x.vertices.size() < y.vertices.size();
    }
    return x.vertices < y.vertices;
  });

  const std::size_t n = simplices.size();
  values_.reserve(n);
  offsets_.reserve(n + 1);
  rank_in_dim_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& e = simplices[order[i]];
    values_.push_back(e.value);
    verts_.insert(verts_.end(), e.vertices.begin(), e.vertices.end());
    offsets_.push_back(verts_.size());
    const int k = static_cast<int>(e.vertices.size()) - 1;
    if (static_cast<int>(by_dim_.size()) <= k) by_dim_.resize(k + 1);
    rank_in_dim_[i] = static_cast<int>(by_dim_[k].size());
    by_dim_[k].push_back(static_cast<int>(i));
  }
  simplices.clear();

  lex_.resize(by_dim_.size());
  for (std::size_t k = 0; k < by_dim_.size(); ++k) {
    lex_[k] = by_dim_[k];
    std::sort(lex_[k].begin(), lex_[k].end(),
              [&](int a, int b) { return lex_less(vertices(a), vertices(b)); });
    for (std::size_t j = 1; j < lex_[k].size(); ++j) {
      if (!lex_less(vertices(lex_[k][j - 1]), vertices(lex_[k][j]))) {
        throw ConsistencyError("duplicate simplex");
      }
    }
  }

  std::vector<int> face;
  facet_offsets_.reserve(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const int k = dim(i);
    if (k > 0) {
      auto v = vertices(i);
      for (int j = 0; j <= k; ++j) {
        face.clear();
        for (int m = 0; m <= k; ++m) {
          if (m != j) face.push_back(v[m]);
        }
        auto f = find(face);
        if (!f) throw ConsistencyError("complex is not closed under faces");
        if (values_[*f] > values_[i]) {
          throw ConsistencyError("face value exceeds coface value");
        }
        facets_.push_back(static_cast<int>(*f));
      }
    }
    facet_offsets_.push_back(facets_.size());
  }
}

std::size_t FilteredComplex::prefix_size(double t) const {
  return static_cast<std::size_t>(
      std::upper_bound(values_.begin(), values_.end(), t) - values_.begin());
}

std::optional<std::size_t> FilteredComplex::find(std::span<const int> v) const {
  const int k = static_cast<int>(v.size()) - 1;
  if (k < 0 || k >= static_cast<int>(lex_.size())) return std::nullopt;
  const auto& list = lex_[k];
  auto it = std::lower_bound(list.begin(), list.end(), v, [&](int a, std::span<const int> key) {
    return lex_less(vertices(a), key);
  });
  if (it == list.end()) return std::nullopt;
  auto found = vertices(*it);
  if (!std::equal(found.begin(), found.end(), v.begin(), v.end())) return std::nullopt;
  return static_cast<std::size_t>(*it);
}

FilteredComplex build_vr_filtration(const PointCloud& pc, int max_dim,
                                    std::optional<double> max_radius,
                                    std::size_t budget) {
  if (max_dim < 0) throw InvalidArgumentError("max_dim must be nonnegative");
  if (max_radius && !(*max_radius > 0)) {
    throw InvalidArgumentError("max_radius must be positive");
  }
  const int n = static_cast<int>(pc.size());
  if (n == 0) throw EmptyInputError("empty point cloud");
  const int top = max_dim + 1;

  // Upper neighbourhoods, sorted by vertex id, with distances.
  std::vector<std::vector<std::pair<int, double>>> up(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double d = pc.distance(i, j);
      if (!max_radius || d <= *max_radius) up[i].emplace_back(j, d);
    }
  }
  auto dist = [&](int a, int b) {
    const auto& l = up[a];
    auto it = std::lower_bound(l.begin(), l.end(), b,
                               [](const std::pair<int, double>& e, int x) { return e.first < x; });
    return it->second;
  };

  std::vector<FilteredComplex::Entry> out;
  auto push = [&](std::vector<int> v, double value) {
    if (out.size() >= budget) {
      throw BudgetExceededError(fmt::format(
          "Vietoris-Rips complex exceeds the budget of {} simplices; lower "
          "max_dim or set max_radius", budget));
    }
    out.push_back({std::move(v), value});
  };

  std::vector<int> simplex;
  std::vector<std::vector<int>> candidates(top + 1);
  // Depth-first clique expansion; candidates[k] holds the common upper
  // neighbours of the current k-simplex.
  auto expand = [&](auto&& self, double value) -> void {
    const int k = static_cast<int>(simplex.size()) - 1;
    if (k == top) return;
    for (int u : candidates[k]) {
      double nv = value;
      for (int w : simplex) nv = std::max(nv, dist(w, u));
      simplex.push_back(u);
      push(simplex, nv);
      if (k + 1 < top) {
        auto& next = candidates[k + 1];
        next.clear();
        for (int c : candidates[k]) {
          if (c > u && std::binary_search(up[u].begin(), up[u].end(), std::make_pair(c, 0.0),
                                          [](const auto& a, const auto& b) { return a.first < b.first; })) {
            next.push_back(c);
          }
        }
        self(self, nv);
      }
      simplex.pop_back();
    }
  };
  for (int v = 0; v < n; ++v) {
    push({v}, 0.0);
    simplex = {v};
    candidates[0].clear();
    for (const auto& e : up[v]) candidates[0].push_back(e.first);
    expand(expand, 0.0);
  }
  return FilteredComplex(n, std::move(out));
}

FilteredComplex build_alpha_filtration(const PointCloud& pc, int max_dim, AlphaRule rule) {
  if (max_dim < 0) throw InvalidArgumentError("max_dim must be nonnegative");
  const int d = pc.ambient_dim();
  if (d != 2 && d != 3) {
    throw InvalidArgumentError("alpha filtration needs a 2D or 3D point cloud");
  }
  const int n = static_cast<int>(pc.size());
  if (n == 0) throw EmptyInputError("empty point cloud");

  // by_dim[k]: sorted, unique k-simplices of the triangulation.
  std::vector<std::vector<std::vector<int>>> by_dim(d + 1);
  by_dim[d] = delaunay(pc);
  for (int k = d - 1; k >= 1; --k) {
    auto& faces = by_dim[k];
    for (const auto& s : by_dim[k + 1]) {
      for (int j = 0; j <= k + 1; ++j) {
        std::vector<int> f;
        f.reserve(k + 1);
        for (int m = 0; m <= k + 1; ++m) {
          if (m != j) f.push_back(s[m]);
        }
        faces.push_back(std::move(f));
      }
    }
    std::sort(faces.begin(), faces.end());
    faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
  }
  by_dim[0].resize(n);
  for (int v = 0; v < n; ++v) by_dim[0][v] = {v};

  // facet_of[k][s][j]: index in by_dim[k-1] of the facet of s omitting j.
  auto index_of = [&](int k, const std::vector<int>& v) {
    const auto& l = by_dim[k];
    return static_cast<int>(std::lower_bound(l.begin(), l.end(), v) - l.begin());
  };
  std::vector<std::vector<std::vector<int>>> facet_of(d + 1);
  for (int k = 1; k <= d; ++k) {
    facet_of[k].resize(by_dim[k].size());
    std::vector<int> f;
    for (std::size_t s = 0; s < by_dim[k].size(); ++s) {
      for (int j = 0; j <= k; ++j) {
        f.clear();
        for (int m = 0; m <= k; ++m) {
          if (m != j) f.push_back(by_dim[k][s][m]);
        }
        facet_of[k][s].push_back(index_of(k - 1, f));
      }
    }
  }

  std::vector<std::vector<double>> value(d + 1);
  value[0].assign(n, 0.0);
  for (int k = 1; k <= d; ++k) value[k].assign(by_dim[k].size(), 0.0);

  if (rule == AlphaRule::kCircumradius) {
    for (int k = 1; k <= d; ++k) {
      for (std::size_t s = 0; s < by_dim[k].size(); ++s) {
        value[k][s] = circumradius(pc, by_dim[k][s]);
      }
    }
  } else {
    for (std::size_t s = 0; s < by_dim[d].size(); ++s) {
      value[d][s] = circumradius(pc, by_dim[d][s]);
    }
    for (int k = d - 1; k >= 1; --k) {
      const auto& faces = by_dim[k];
      std::vector<Circumsphere> spheres(faces.size());
      for (std::size_t s = 0; s < faces.size(); ++s) spheres[s] = circumsphere(pc, faces[s]);
      std::vector<char> attached(faces.size(), 0);
      std::vector<double> coface_min(faces.size(), std::numeric_limits<double>::infinity());
      for (std::size_t c = 0; c < by_dim[k + 1].size(); ++c) {
        const auto& cv = by_dim[k + 1][c];
        for (int j = 0; j <= k + 1; ++j) {
          int f = facet_of[k + 1][c][j];
          coface_min[f] = std::min(coface_min[f], value[k + 1][c]);
          const auto& sph = spheres[f];
          double dd = 0.0;
          for (int a = 0; a < d; ++a) {
            double x = pc.coord(cv[j], a) - sph.center[a];
            dd += x * x;
          }
          if (dd < sph.squared_radius * (1.0 - 1e-12)) attached[f] = 1;
        }
      }
      for (std::size_t s = 0; s < faces.size(); ++s) {
        value[k][s] = attached[s] ? coface_min[s] : std::sqrt(spheres[s].squared_radius);
      }
    }
  }
  // Faces never exceed cofaces, also under rounding.
  for (int k = 1; k <= d; ++k) {
    for (std::size_t s = 0; s < by_dim[k].size(); ++s) {
      for (int f : facet_of[k][s]) value[k][s] = std::max(value[k][s], value[k - 1][f]);
    }
  }

  const int top = std::min(d, max_dim + 1);
  std::vector<FilteredComplex::Entry> out;
  for (int k = 0; k <= top; ++k) {
    for (std::size_t s = 0; s < by_dim[k].size(); ++s) {
      out.push_back({std::move(by_dim[k][s]), value[k][s]});
    }
  }
  return FilteredComplex(n, std::move(out));
}

ComplexKind resolve_complex_kind(ComplexKind kind, int ambient_dim) {
  if (kind != ComplexKind::kAuto) return kind;
  return (ambient_dim == 2 || ambient_dim == 3) ? ComplexKind::kAlpha
                                                : ComplexKind::kVietorisRips;
}

FilteredComplex build_filtration(const PointCloud& pc, int max_dim,
                                 const ComplexOptions& opts) {
  if (resolve_complex_kind(opts.kind, pc.ambient_dim()) == ComplexKind::kAlpha) {
    return build_alpha_filtration(pc, max_dim, opts.alpha_rule);
  }
  return build_vr_filtration(pc, max_dim, opts.max_radius, opts.budget);
}

void write_filtration(std::ostream& out, const FilteredComplex& fc) {
  for (std::size_t i = 0; i < fc.size(); ++i) {
    fmt::print(out, "{} : {}\n", fmt::join(fc.vertices(i), " "), fc.value(i));
  }
}

}  // namespace topf
