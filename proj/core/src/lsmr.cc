#include "topf/lsmr.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

namespace topf {

namespace {

double sign(double x) { return x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0); }

// Stable Givens rotation: returns (c, s, r) with [c s; -s c] [a; b] = [r; 0].
std::tuple<double, double, double> sym_ortho(double a, double b) {
  if (b == 0) return {sign(a), 0.0, std::abs(a)};
  if (a == 0) return {0.0, sign(b), std::abs(b)};
  if (std::abs(b) > std::abs(a)) {
    double tau = a / b;
    double s = sign(b) / std::sqrt(1 + tau * tau);
    double c = s * tau;
    return {c, s, b / s};
  }
  double tau = b / a;
  double c = sign(a) / std::sqrt(1 + tau * tau);
  double s = c * tau;
  return {c, s, a / c};
}

}  // namespace

LsmrResult lsmr(const Eigen::SparseMatrix<double>& a, const Eigen::VectorXd& b,
                const LsmrOptions& opts) {
  const long m = a.rows(), n = a.cols();
  const long max_it = opts.max_iterations > 0 ? opts.max_iterations : 10 * (m + n);
  LsmrResult res;
  res.x = Eigen::VectorXd::Zero(n);

  Eigen::VectorXd u = b;
  const double normb = u.norm();
  double beta = normb;
  if (beta > 0) u /= beta;
  Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
  double alpha = 0.0;
  if (beta > 0) {
    v = a.transpose() * u;
    alpha = v.norm();
  }
  if (alpha > 0) v /= alpha;

  double zetabar = alpha * beta, alphabar = alpha;
  double rho = 1, rhobar = 1, cbar = 1, sbar = 0;
  Eigen::VectorXd h = v;
  Eigen::VectorXd hbar = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd& x = res.x;

  double betadd = beta, betad = 0, rhodold = 1, tautildeold = 0, thetatilde = 0;
  double zeta = 0, d = 0;
  double norm_a2 = alpha * alpha, maxrbar = 0, minrbar = 1e100;
  double norm_a = std::sqrt(norm_a2), cond_a = 1, normx = 0;
  const double ctol = opts.conlim > 0 ? 1.0 / opts.conlim : 0.0;

  res.residual_norm = beta;
  res.normal_residual_norm = alpha * beta;
  if (res.normal_residual_norm == 0) return res;

  long itn = 0;
  int istop = 0;
  while (itn < max_it) {
    ++itn;
    u = a * v - alpha * u;
    beta = u.norm();
    if (beta > 0) {
      u /= beta;
      v = a.transpose() * u - beta * v;
      alpha = v.norm();
      if (alpha > 0) v /= alpha;
    }

    // No damping, so the first rotation is the identity.
    const double alphahat = alphabar;
    const double chat = 1.0, shat = 0.0;

    const double rhoold = rho;
    double c, s;
    std::tie(c, s, rho) = sym_ortho(alphahat, beta);
    const double thetanew = s * alpha;
    alphabar = c * alpha;

    const double rhobarold = rhobar;
    const double zetaold = zeta;
    const double thetabar = sbar * rho;
    const double rhotemp = cbar * rho;
    std::tie(cbar, sbar, rhobar) = sym_ortho(cbar * rho, thetanew);
    zeta = cbar * zetabar;
    zetabar = -sbar * zetabar;

    hbar = h - (thetabar * rho / (rhoold * rhobarold)) * hbar;
    x += (zeta / (rho * rhobar)) * hbar;
    h = v - (thetanew / rho) * h;

    // Residual norm estimate.
    const double betaacute = chat * betadd;
    const double betacheck = -shat * betadd;
    const double betahat = c * betaacute;
    betadd = -s * betaacute;
    const double thetatildeold = thetatilde;
    auto [ctildeold, stildeold, rhotildeold] = sym_ortho(rhodold, thetabar);
    thetatilde = stildeold * rhobar;
    rhodold = ctildeold * rhobar;
    betad = -stildeold * betad + ctildeold * betahat;
    tautildeold = (zetaold - thetatildeold * tautildeold) / rhotildeold;
    const double taud = (zeta - thetatilde * tautildeold) / rhodold;
    d += betacheck * betacheck;
    const double normr = std::sqrt(d + (betad - taud) * (betad - taud) + betadd * betadd);

    norm_a2 += beta * beta;
    norm_a = std::sqrt(norm_a2);
    norm_a2 += alpha * alpha;

    maxrbar = std::max(maxrbar, rhobarold);
    if (itn > 1) minrbar = std::min(minrbar, rhobarold);
    cond_a = std::max(maxrbar, rhotemp) / std::min(minrbar, rhotemp);

    const double normar = std::abs(zetabar);
    normx = x.norm();
    res.residual_norm = normr;
    res.normal_residual_norm = normar;

    const double test1 = normr / normb;
    const double test2 = (norm_a * normr != 0) ? normar / (norm_a * normr)
                                                : std::numeric_limits<double>::infinity();
    const double test3 = 1.0 / cond_a;
    const double t1 = test1 / (1 + norm_a * normx / normb);
    const double rtol = opts.btol + opts.atol * norm_a * normx / normb;

    if (itn >= max_it) istop = 7;
    if (1 + test3 <= 1) istop = 6;
    if (1 + test2 <= 1) istop = 5;
    if (1 + t1 <= 1) istop = 4;
    if (test3 <= ctol) istop = 3;
    if (test2 <= opts.atol) istop = 2;
    if (test1 <= rtol) istop = 1;
    if (istop > 0) break;
  }
  res.stop_reason = istop;
  res.iterations = itn;
  return res;
}

}  // namespace topf
