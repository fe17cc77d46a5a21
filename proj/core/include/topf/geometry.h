#pragma once

#include <span>
#include <vector>

#include "topf/point_cloud.h"

namespace topf {

struct Circumsphere {
  std::vector<double> center;
  double squared_radius = 0.0;
};

// Smallest sphere through the given vertices (the circumsphere of the simplex
// inside its own affine hull). Throws DegenerateInputError when the vertices
// are affinely dependent.
Circumsphere circumsphere(const PointCloud& pc, std::span<const int> vertices);

double circumradius(const PointCloud& pc, std::span<const int> vertices);

}  // namespace topf
