#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace topf {

struct LsmrOptions {
  double atol = 1e-8;
  double btol = 1e-8;
  double conlim = 1e8;
  // 0 selects 10 * (rows + cols).
  long max_iterations = 0;
};

struct LsmrResult {
  Eigen::VectorXd x;
  // 0: x = 0 is exact; 1: Ax = b to tolerance; 2: least-squares optimal to
  // tolerance; 3: condition limit; 4-6: as 1-3 at machine precision;
  // 7: iteration limit.
  int stop_reason = 0;
  long iterations = 0;
  double residual_norm = 0.0;
  double normal_residual_norm = 0.0;  // ||A^T r||
};

// Least-squares solve of min ||A x - b|| with LSMR (Fong and Saunders).
// Deterministic for a fixed matrix and right-hand side.
LsmrResult lsmr(const Eigen::SparseMatrix<double>& a, const Eigen::VectorXd& b,
                const LsmrOptions& opts = {});

}  // namespace topf
