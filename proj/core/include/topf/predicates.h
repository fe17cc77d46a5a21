#pragma once

#include <span>
#include <vector>

#include "topf/point_cloud.h"

namespace topf {

// Exact geometric predicates on the points of a cloud, restricted to a subset
// of coordinate axes. Each predicate first evaluates a floating-point
// determinant with a static error bound and falls back to rational arithmetic
// only when the sign is uncertain.
//
// Conventions, for ids p_0..p_D and D = axes.size():
//   orientation(ids)  = sign det [ p_j|axes , 1 ]            (D+1 rows)
//   lifted(ids)       = sign det [ p_i|axes , |p_i|^2 , 1 ]   (D+2 rows)
// The lift always uses the full-dimensional squared norm, so the lifted test
// on a projection stays correct for points lying in a common affine D-plane.
// p_{D+1} lies strictly inside the circumsphere of p_0..p_D iff
// lifted * orientation > 0.
//
// lifted() breaks exact ties by symbolic perturbation: the lift of point i is
// raised by eps^(N - i), so higher ids dominate. The perturbed sign is zero
// only if the points are not distinct.
class Predicates {
 public:
  explicit Predicates(const PointCloud& pc) : pc_(pc) {}

  int orientation(std::span<const int> ids, std::span<const int> axes) const;
  int lifted(std::span<const int> ids, std::span<const int> axes) const;

  const PointCloud& cloud() const { return pc_; }

 private:
  const PointCloud& pc_;
};

}  // namespace topf
