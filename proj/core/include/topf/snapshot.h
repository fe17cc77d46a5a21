#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/SparseCore>

#include "topf/filtration.h"

namespace topf {

// The sublevel complex {sigma : value(sigma) <= t} of a filtration. Because
// the filtration is stored in sorted order this is a prefix; k-simplices are
// indexed densely in filtration order.
class SnapshotComplex {
 public:
  SnapshotComplex(const FilteredComplex& fc, double threshold);

  const FilteredComplex& parent() const { return *fc_; }
  double threshold() const { return threshold_; }
  // Number of simplices of the parent included.
  std::size_t prefix() const { return prefix_; }

  // Number of k-simplices (0 for k outside the parent's range).
  std::size_t count(int k) const {
    return (k < 0 || k >= static_cast<int>(counts_.size())) ? 0 : counts_[k];
  }
  // Largest dimension with at least one simplex (-1 when empty).
  int dimension() const;

  // Parent index of the j-th k-simplex.
  int parent_index(int k, std::size_t j) const { return fc_->of_dim(k)[j]; }
  std::span<const int> vertices(int k, std::size_t j) const {
    return fc_->vertices(parent_index(k, j));
  }
  // Dense index of a parent simplex, or -1 if it is not in the snapshot.
  int local_index(std::size_t parent) const {
    return parent < prefix_ ? fc_->rank_in_dim(parent) : -1;
  }

 private:
  const FilteredComplex* fc_;
  double threshold_;
  std::size_t prefix_;
  std::vector<std::size_t> counts_;
};

inline SnapshotComplex snapshot(const FilteredComplex& fc, double t) {
  return SnapshotComplex(fc, t);
}

struct BoundaryEntry {
  int row;
  int col;
  int value;
};

// Signed incidence between k-simplices (rows) and (k+1)-simplices (columns):
// entry (tau, sigma) = (-1)^i when tau omits the i-th vertex of sigma.
struct BoundaryMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<BoundaryEntry> entries;  // column-major order

  Eigen::SparseMatrix<double> to_sparse() const;
};

// B_k of the snapshot. Throws InvalidArgumentError unless
// 0 <= k < parent().dimension().
BoundaryMatrix boundary_matrix(const SnapshotComplex& sc, int k);

}  // namespace topf
