#include "topf/harmonic.h"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "topf/error.h"
#include "topf/lsmr.h"

namespace topf {

void InterpolationParams::validate() const {
  if (!(lambda >= 0 && lambda < 1)) throw InvalidArgumentError("lambda must lie in [0, 1)");
}

double interpolation_time(double birth, double death, int k, const InterpolationParams& p) {
  p.validate();
  if (!(birth >= 0) || !(death >= birth) || !std::isfinite(death)) {
    throw InvalidArgumentError("interpolation needs 0 <= birth <= death < inf");
  }
  if (p.kind == InterpolationKind::kLinear) return (1 - p.lambda) * birth + p.lambda * death;
  if (k == 0 || birth == 0) return p.lambda * death;
  double t = std::pow(birth, 1 - p.lambda) * std::pow(death, p.lambda);
  return std::clamp(t, birth, death);
}

double interpolation_time(double birth, double death, int k, double lambda) {
  return interpolation_time(birth, death, k, InterpolationParams{lambda});
}

RealChain embed_generator(const Chain& gen, const SnapshotComplex& sc, int k) {
  RealChain out;
  out.dim = k;
  out.values = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(sc.count(k)));
  for (const auto& e : gen) {
    int local = sc.local_index(e.simplex);
    if (local < 0 || sc.parent().dim(e.simplex) != k) {
      throw ConsistencyError("generator simplex " + std::to_string(e.simplex) +
                             " is not a " + std::to_string(k) + "-simplex of the snapshot");
    }
    out.values[local] = e.coeff.signed_value();
  }
  return out;
}

namespace {

Eigen::SparseMatrix<double> boundary_or_empty(const SnapshotComplex& sc, int k) {
  if (k >= 0 && k < sc.parent().dimension()) return boundary_matrix(sc, k).to_sparse();
  const auto rows = static_cast<Eigen::Index>(sc.count(k));
  return Eigen::SparseMatrix<double>(rows, 0);
}

}  // namespace

Eigen::VectorXd simplicial_weights(const SnapshotComplex& sc, int k, WeightScheme scheme,
                                   std::size_t budget) {
  const auto n = static_cast<Eigen::Index>(sc.count(k));
  switch (scheme) {
    case WeightScheme::kUnweighted:
      return Eigen::VectorXd::Ones(n);
    case WeightScheme::kTriangle: {
      Eigen::VectorXd cofaces = Eigen::VectorXd::Zero(n);
      if (k < sc.parent().dimension()) {
        for (const auto& e : boundary_matrix(sc, k).entries) cofaces[e.row] += 1;
      }
      return (cofaces.array() + 1).square().inverse().matrix();
    }
    case WeightScheme::kEffectiveResistance: {
      if (static_cast<std::size_t>(n) > budget) {
        throw BudgetExceededError(fmt::format(
            "effective resistance weights on {} simplices exceed the budget of {}; "
            "use triangle weights", n, budget));
      }
      if (k == 0) return Eigen::VectorXd::Ones(n);
      // Row space of B_{k-1} = column space of B_{k-1}^T.
      Eigen::MatrixXd bt = Eigen::MatrixXd(boundary_matrix(sc, k - 1).to_sparse()).transpose();
      Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(bt);
      const auto r = qr.rank();
      Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, r);
      Eigen::VectorXd diag = q.rowwise().squaredNorm();
      return diag.array().square().matrix();
    }
  }
  throw InvalidArgumentError("unknown weight scheme");
}

HodgeOperators hodge_operators(const SnapshotComplex& sc, int k, const Eigen::VectorXd& w) {
  const auto n = static_cast<Eigen::Index>(sc.count(k));
  if (w.size() != n) throw InvalidArgumentError("weight vector has the wrong length");
  if ((w.array() <= 0).any() || !w.allFinite()) {
    throw InvalidArgumentError("weights must be positive and finite");
  }
  HodgeOperators ops;
  Eigen::VectorXd sqrt_w = w.cwiseSqrt();
  if (k >= 1) {
    ops.gradient = sqrt_w.asDiagonal() * Eigen::SparseMatrix<double>(boundary_or_empty(sc, k - 1).transpose());
  } else {
    ops.gradient = Eigen::SparseMatrix<double>(n, 0);
  }
  ops.curl = sqrt_w.cwiseInverse().asDiagonal() * boundary_or_empty(sc, k);
  return ops;
}

HodgeResiduals hodge_residuals(const RealChain& e, const HodgeOperators& ops) {
  HodgeResiduals r;
  const double norm = e.values.norm();
  if (norm == 0) return r;
  if (ops.gradient.cols() > 0) r.gradient = (ops.gradient.transpose() * e.values).norm() / norm;
  if (ops.curl.cols() > 0) r.curl = (ops.curl.transpose() * e.values).norm() / norm;
  return r;
}

RealChain harmonic_project(const RealChain& e, const SnapshotComplex& sc, const Eigen::VectorXd& w,
                           const ProjectionOptions& opts) {
  if (e.values.size() != static_cast<Eigen::Index>(sc.count(e.dim))) {
    throw InvalidArgumentError("chain length does not match the snapshot");
  }
  const HodgeOperators ops = hodge_operators(sc, e.dim, w);
  LsmrOptions lo;
  lo.atol = opts.solver_tol;
  lo.btol = opts.solver_tol;
  lo.conlim = 0;

  RealChain out;
  out.dim = e.dim;
  out.values = e.values.cwiseQuotient(w.cwiseSqrt());
  const double initial = out.values.norm();
  if (initial == 0) return out;

  auto remove = [&](const Eigen::SparseMatrix<double>& a, Eigen::VectorXd& x) {
    if (a.cols() == 0 || a.nonZeros() == 0) return;
    // LSMR stops once ||A^T r|| <= atol ||A|| ||r||; tighten atol so that this
    // also meets the residual contract, using ||A||_2^2 <= ||A||_1 ||A||_inf.
    Eigen::VectorXd row_sum = Eigen::VectorXd::Zero(a.rows());
    double max_col = 0.0;
    for (Eigen::Index c = 0; c < a.outerSize(); ++c) {
      double col = 0.0;
      for (Eigen::SparseMatrix<double>::InnerIterator it(a, c); it; ++it) {
        col += std::abs(it.value());
        row_sum[it.row()] += std::abs(it.value());
      }
      max_col = std::max(max_col, col);
    }
    const double norm_a = std::sqrt(max_col * row_sum.maxCoeff());
    LsmrOptions round_opts = lo;
    round_opts.atol = std::min(lo.atol, 0.1 * opts.residual_tol / std::max(norm_a, 1.0));
    LsmrResult r = lsmr(a, x, round_opts);
    x -= a * r.x;
  };

  HodgeResiduals res;
  for (int round = 0; round < opts.max_rounds; ++round) {
    remove(ops.gradient, out.values);
    remove(ops.curl, out.values);
    if (out.values.norm() <= 1e-10 * initial) {
      out.values.setZero();
      return out;
    }
    res = hodge_residuals(out, ops);
    if (res.gradient <= opts.residual_tol && res.curl <= opts.residual_tol) return out;
  }
  throw SolverError(fmt::format("harmonic projection did not converge (gradient residual {:.3g}, "
                                "curl residual {:.3g})", res.gradient, res.curl),
                    res.gradient, res.curl);
}

void write_harmonic_csv(std::ostream& out, const RealChain& e, const SnapshotComplex& sc) {
  for (Eigen::Index j = 0; j < e.values.size(); ++j) {
    fmt::print(out, "{},{}\n", fmt::join(sc.vertices(e.dim, j), " "), e.values[j]);
  }
}

}  // namespace topf
