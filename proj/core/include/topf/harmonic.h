#pragma once

#include <cstddef>
#include <iosfwd>

#include <Eigen/Core>

#include "topf/persistence.h"
#include "topf/snapshot.h"

namespace topf {

enum class InterpolationKind {
  // b^(1 - lambda) * d^lambda for k >= 1, lambda * d for k = 0.
  kGeometric,
  // (1 - lambda) * b + lambda * d.
  kLinear,
};

struct InterpolationParams {
  double lambda = 0.3;
  InterpolationKind kind = InterpolationKind::kGeometric;
  void validate() const;
};

// Filtration value at which a class born at `birth` and dying at `death` is
// projected. A zero birth in positive dimension falls back to lambda * death.
double interpolation_time(double birth, double death, int k, const InterpolationParams& p);
double interpolation_time(double birth, double death, int k, double lambda);

// Real k-chain on a snapshot, indexed by the snapshot's dense k-indices.
struct RealChain {
  int dim = 0;
  Eigen::VectorXd values;
};

// Maps an F3 chain to the reals through 1 -> +1, 2 -> -1. Throws
// ConsistencyError when a simplex of the chain is missing from the snapshot
// or has the wrong dimension.
RealChain embed_generator(const Chain& gen, const SnapshotComplex& sc, int k);

enum class WeightScheme { kUnweighted, kTriangle, kEffectiveResistance };

inline constexpr std::size_t kDefaultResistanceBudget = 5000;

// Positive weights on the k-simplices of the snapshot.
//   kUnweighted: 1.
//   kTriangle: 1 / (number of (k+1)-cofaces + 1)^2.
//   kEffectiveResistance: squared diagonal of the projector onto the row
//   space of B_{k-1} (dense; limited to `budget` k-simplices). For k = 0 the
//   operator vanishes and the weights are 1.
Eigen::VectorXd simplicial_weights(const SnapshotComplex& sc, int k, WeightScheme scheme,
                                   std::size_t budget = kDefaultResistanceBudget);

struct ProjectionOptions {
  double solver_tol = 1e-8;
  // Required ||B_{k-1,w} e|| / ||e|| and ||B_{k,w}^T e|| / ||e||.
  double residual_tol = 1e-7;
  int max_rounds = 6;
};

// Weighted operators on the snapshot with W = diag(w):
//   gradient = W^{1/2} B_{k-1}^T  (zero columns for k = 0)
//   curl     = W^{-1/2} B_k       (zero columns when no (k+1)-simplices)
struct HodgeOperators {
  Eigen::SparseMatrix<double> gradient;
  Eigen::SparseMatrix<double> curl;
};
HodgeOperators hodge_operators(const SnapshotComplex& sc, int k, const Eigen::VectorXd& w);

// Harmonic part of e in the weighted Hodge decomposition. The chain is first
// rescaled to W^{-1/2} e, then the gradient and curl components are removed
// by two least-squares solves, repeated on the remainder until both residual
// contracts hold. The result is expressed in the rescaled coordinates. A
// remainder negligible next to e is returned as exactly zero.
RealChain harmonic_project(const RealChain& e, const SnapshotComplex& sc, const Eigen::VectorXd& w,
                           const ProjectionOptions& opts = {});

struct HodgeResiduals {
  double gradient = 0.0;  // ||gradient^T e|| / ||e||
  double curl = 0.0;      // ||curl^T e|| / ||e||
};
HodgeResiduals hodge_residuals(const RealChain& e, const HodgeOperators& ops);

// One line per k-simplex: "v0 v1 ... vk,value".
void write_harmonic_csv(std::ostream& out, const RealChain& e, const SnapshotComplex& sc);

}  // namespace topf
