#include "topf/geometry.h"

#include <cmath>

#include <Eigen/Dense>

#include "topf/error.h"

namespace topf {

Circumsphere circumsphere(const PointCloud& pc, std::span<const int> vertices) {
  const int n = pc.ambient_dim();
  const int k = static_cast<int>(vertices.size()) - 1;
  if (k < 0) throw InvalidArgumentError("circumsphere of an empty simplex");
  Circumsphere out;
  out.center.assign(pc.point(vertices[0]).begin(), pc.point(vertices[0]).end());
  if (k == 0) return out;

  // Centre = p0 + A^T x with A the matrix of edge vectors p_i - p0; the
  // equidistance conditions give (A A^T) x = |a_i|^2 / 2.
  Eigen::MatrixXd a(k, n);
  for (int i = 0; i < k; ++i) {
    for (int c = 0; c < n; ++c) {
      a(i, c) = pc.coord(vertices[i + 1], c) - pc.coord(vertices[0], c);
    }
  }
  Eigen::MatrixXd gram = a * a.transpose();
  Eigen::VectorXd rhs = 0.5 * gram.diagonal();
  Eigen::FullPivLU<Eigen::MatrixXd> lu(gram);
  Eigen::VectorXd x;
  if (lu.rank() == k) {
    x = lu.solve(rhs);
  } else {
    // Numerically flat simplex, e.g. a Delaunay sliver of nearly cospherical
    // points. If the vertices are (nearly) cospherical within their hull the
    // minimum-norm solution is the smallest sphere through them.
    x = gram.completeOrthogonalDecomposition().solve(rhs);
    const double scale = rhs.cwiseAbs().maxCoeff();
    if ((gram * x - rhs).cwiseAbs().maxCoeff() > 1e-8 * scale) {
      // Not cospherical: the true sphere is huge but finite unless the
      // system is exactly singular.
      lu.setThreshold(0.0);
      if (lu.rank() < k) {
        throw DegenerateInputError("circumsphere of an affinely dependent simplex");
      }
      x = lu.solve(rhs);
    }
  }
  Eigen::VectorXd offset = a.transpose() * x;
  for (int c = 0; c < n; ++c) out.center[c] += offset[c];
  out.squared_radius = offset.squaredNorm();
  return out;
}

double circumradius(const PointCloud& pc, std::span<const int> vertices) {
  return std::sqrt(circumsphere(pc, vertices).squared_radius);
}

}  // namespace topf
