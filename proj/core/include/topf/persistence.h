#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "topf/filtration.h"
#include "topf/snapshot.h"

namespace topf {

// An element of the field with three elements; 2 represents -1.
class F3 {
 public:
  constexpr F3() = default;
  constexpr F3(int v) : v_(static_cast<std::uint8_t>(((v % 3) + 3) % 3)) {}
  constexpr int value() const { return v_; }
  // The representative in {-1, 0, 1}.
  constexpr int signed_value() const { return v_ == 2 ? -1 : v_; }
  constexpr explicit operator bool() const { return v_ != 0; }

  friend constexpr F3 operator+(F3 a, F3 b) { return F3(a.v_ + b.v_); }
  friend constexpr F3 operator-(F3 a, F3 b) { return F3(a.v_ + 3 - b.v_); }
  friend constexpr F3 operator-(F3 a) { return F3(3 - a.v_); }
  friend constexpr F3 operator*(F3 a, F3 b) { return F3(a.v_ * b.v_); }
  // Every nonzero element is its own inverse.
  constexpr F3 inverse() const { return *this; }
  friend constexpr bool operator==(F3, F3) = default;

 private:
  std::uint8_t v_ = 0;
};

struct ChainEntry {
  int simplex;  // index into the filtration
  F3 coeff;
  friend bool operator==(const ChainEntry&, const ChainEntry&) = default;
};

// Sparse chain sorted by simplex index, without zero coefficients.
using Chain = std::vector<ChainEntry>;

struct PersistencePair {
  int dim = 0;
  double birth = 0.0;
  double death = std::numeric_limits<double>::infinity();
  int birth_simplex = -1;
  int death_simplex = -1;  // -1 for essential classes
  // Cycle representing the class at its birth.
  Chain generator;

  bool essential() const { return death_simplex < 0; }
  bool zero_persistence() const { return !essential() && death == birth; }
};

struct PersistenceDiagram {
  int max_dim = 0;
  // Sorted by (dim, birth simplex).
  std::vector<PersistencePair> pairs;
  // Largest filtration value; used as the death of essential classes when a
  // finite lifetime is needed.
  double max_value = 0.0;

  std::vector<const PersistencePair*> in_dim(int k) const;
  // death - birth, with essential classes dying at max_value.
  double lifetime(const PersistencePair& p) const;
  double finite_death(const PersistencePair& p) const;
};

// Persistent homology over F3 in dimensions 0..max_dim by column reduction
// with clearing. Finite classes are represented by their reduced boundary
// column, essential ones by the accumulated kernel chain, and 0-dimensional
// classes by the vertex that creates them.
PersistenceDiagram compute_persistence(const FilteredComplex& fc, int max_dim);

// Rank over F3 of a signed boundary matrix.
std::size_t f3_rank(const BoundaryMatrix& b);

// Betti numbers of the snapshot over F3 for k = 0..max_dim.
std::vector<int> betti_numbers(const SnapshotComplex& sc, int max_dim);

// JSON array of {dim, birth, death, generator: [[vertices], coeff]}; essential
// classes have death null and coefficients are written as 1 or 2.
std::string diagram_to_json(const PersistenceDiagram& diag, const FilteredComplex& fc);

}  // namespace topf
