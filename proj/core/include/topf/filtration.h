#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "topf/point_cloud.h"

namespace topf {

// A simplex as a strictly increasing list of vertex ids. The vertex order
// fixes the orientation.
struct Simplex {
  std::vector<int> vertices;
  int dim() const { return static_cast<int>(vertices.size()) - 1; }
  friend bool operator==(const Simplex&, const Simplex&) = default;
  friend auto operator<=>(const Simplex&, const Simplex&) = default;
};

// A filtered simplicial complex stored in filtration order: simplex i is the
// i-th in the total order by (value, dim, lexicographic vertices). Faces
// therefore precede their cofaces, and every sublevel set is a prefix.
class FilteredComplex {
 public:
  struct Entry {
    std::vector<int> vertices;
    double value;
  };

  FilteredComplex() = default;

  // Sorts and indexes the given simplices. Throws ConsistencyError when the
  // family is not downward closed, a vertex list is not strictly increasing,
  // or a face has a larger value than one of its cofaces.
  FilteredComplex(int vertex_count, std::vector<Entry> simplices);

  std::size_t size() const { return values_.size(); }
  int vertex_count() const { return vertex_count_; }
  // Largest simplex dimension present (-1 when empty).
  int dimension() const { return static_cast<int>(by_dim_.size()) - 1; }

  int dim(std::size_t i) const {
    return static_cast<int>(offsets_[i + 1] - offsets_[i]) - 1;
  }
  std::span<const int> vertices(std::size_t i) const {
    return {verts_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }
  Simplex simplex(std::size_t i) const {
    auto v = vertices(i);
    return {{v.begin(), v.end()}};
  }
  double value(std::size_t i) const { return values_[i]; }
  const std::vector<double>& values() const { return values_; }

  // Index of the face obtained by omitting the j-th vertex, for j in
  // [0, dim]. Empty for vertices.
  std::span<const int> facets(std::size_t i) const {
    return {facets_.data() + facet_offsets_[i],
            facet_offsets_[i + 1] - facet_offsets_[i]};
  }

  // Simplices of dimension k in filtration order, and the position of a
  // simplex inside that list.
  std::span<const int> of_dim(int k) const {
    if (k < 0 || k > dimension()) return {};
    return by_dim_[k];
  }
  int rank_in_dim(std::size_t i) const { return rank_in_dim_[i]; }

  // Number of simplices with value <= t (the sublevel set is a prefix).
  std::size_t prefix_size(double t) const;

  std::optional<std::size_t> find(std::span<const int> vertices) const;

  double max_value() const { return values_.empty() ? 0.0 : values_.back(); }

 private:
  int vertex_count_ = 0;
  std::vector<double> values_;
  std::vector<std::size_t> offsets_{0};
  std::vector<int> verts_;
  std::vector<std::size_t> facet_offsets_{0};
  std::vector<int> facets_;
  std::vector<std::vector<int>> by_dim_;
  std::vector<int> rank_in_dim_;
  // Per dimension: simplex indices sorted lexicographically by vertices.
  std::vector<std::vector<int>> lex_;
};

inline constexpr std::size_t kDefaultSimplexBudget = 2'000'000;

// Vietoris-Rips filtration up to dimension max_dim + 1. A simplex enters at
// its largest pairwise vertex distance; with max_radius, only simplices whose
// diameter is at most max_radius are built.
FilteredComplex build_vr_filtration(const PointCloud& pc, int max_dim,
                                    std::optional<double> max_radius = std::nullopt,
                                    std::size_t budget = kDefaultSimplexBudget);

enum class AlphaRule {
  // A simplex enters at the radius of its smallest empty circumsphere: its
  // circumradius when no coface's opposite vertex lies inside its
  // circumsphere, otherwise when its first coface enters.
  kGabriel,
  // A simplex enters at its circumradius, raised to the largest value of its
  // faces where needed.
  kCircumradius,
};

// Alpha filtration on the Delaunay triangulation (2D and 3D), truncated to
// dimension max_dim + 1.
FilteredComplex build_alpha_filtration(const PointCloud& pc, int max_dim,
                                       AlphaRule rule = AlphaRule::kGabriel);

enum class ComplexKind { kAuto, kAlpha, kVietorisRips };

struct ComplexOptions {
  ComplexKind kind = ComplexKind::kAuto;
  std::optional<double> max_radius;
  AlphaRule alpha_rule = AlphaRule::kGabriel;
  std::size_t budget = kDefaultSimplexBudget;
};

// Under kAuto: alpha for ambient dimension 2 and 3, Vietoris-Rips otherwise
// (the Delaunay construction does not cover the line).
ComplexKind resolve_complex_kind(ComplexKind kind, int ambient_dim);

FilteredComplex build_filtration(const PointCloud& pc, int max_dim,
                                 const ComplexOptions& opts = {});

// One simplex per line: "v0 v1 ... vk : value".
void write_filtration(std::ostream& out, const FilteredComplex& fc);

}  // namespace topf
