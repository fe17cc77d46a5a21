#include "topf/snapshot.h"

#include <string>

#include "topf/error.h"

namespace topf {

SnapshotComplex::SnapshotComplex(const FilteredComplex& fc, double threshold)
    : fc_(&fc), threshold_(threshold), prefix_(fc.prefix_size(threshold)) {
  counts_.assign(fc.dimension() + 1, 0);
  for (int k = 0; k <= fc.dimension(); ++k) {
    auto list = fc.of_dim(k);
    // Dense indices follow filtration order, so the k-simplices present form
    // a prefix of of_dim(k).
    std::size_t lo = 0, hi = list.size();
    while (lo < hi) {
      std::size_t mid = (lo + hi) / 2;
      if (static_cast<std::size_t>(list[mid]) < prefix_) lo = mid + 1;
      else hi = mid;
    }
    counts_[k] = lo;
  }
}

int SnapshotComplex::dimension() const {
  for (int k = static_cast<int>(counts_.size()) - 1; k >= 0; --k) {
    if (counts_[k] > 0) return k;
  }
  return -1;
}

Eigen::SparseMatrix<double> BoundaryMatrix::to_sparse() const {
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(entries.size());
  for (const auto& e : entries) t.emplace_back(e.row, e.col, static_cast<double>(e.value));
  Eigen::SparseMatrix<double> m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

BoundaryMatrix boundary_matrix(const SnapshotComplex& sc, int k) {
  const FilteredComplex& fc = sc.parent();
  if (k < 0 || k >= fc.dimension()) {
    throw InvalidArgumentError("boundary matrix index " + std::to_string(k) +
                               " out of range for a complex of dimension " +
                               std::to_string(fc.dimension()));
  }
  BoundaryMatrix b;
  b.rows = sc.count(k);
  b.cols = sc.count(k + 1);
  b.entries.reserve(b.cols * (k + 2));
  for (std::size_t c = 0; c < b.cols; ++c) {
    auto facets = fc.facets(sc.parent_index(k + 1, c));
    for (int i = 0; i <= k + 1; ++i) {
      b.entries.push_back({fc.rank_in_dim(facets[i]), static_cast<int>(c), (i % 2 == 0) ? 1 : -1});
    }
  }
  return b;
}

}  // namespace topf
