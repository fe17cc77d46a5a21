#pragma once

#include <array>
#include <vector>

#include "topf/point_cloud.h"

namespace topf {

// Delaunay triangulation of a 2D or 3D point cloud. Returns the
// top-dimensional simplices with vertex ids sorted ascending, in a
// deterministic order. Co-spherical configurations are resolved by a
// consistent symbolic perturbation, so the result is always a valid
// triangulation of the convex hull.
//
// Throws DegenerateInputError when the points do not span the ambient space,
// when fewer than ambient_dim + 1 points are given, or on duplicated points.
std::vector<std::vector<int>> delaunay(const PointCloud& pc);

}  // namespace topf
