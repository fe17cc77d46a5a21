#include "topf/clustering.h"

#include <algorithm>
#include <limits>
#include <map>
#include <random>
#include <utility>

#include "topf/error.h"
#include "topf/random.h"

namespace topf {

namespace {

struct Run {
  std::vector<int> labels;
  double inertia = std::numeric_limits<double>::infinity();
};

Run lloyd(const Eigen::MatrixXd& x, int k, std::uint64_t seed, int max_iterations) {
  const Eigen::Index n = x.rows();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  // k-means++ seeding.
  Eigen::MatrixXd centers(k, x.cols());
  centers.row(0) = x.row(static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(n)));
  Eigen::VectorXd d2 = (x.rowwise() - centers.row(0)).rowwise().squaredNorm();
  for (int c = 1; c < k; ++c) {
    const double total = d2.sum();
    Eigen::Index pick = 0;
    if (total > 0) {
      double target = unit(rng) * total;
      for (pick = 0; pick < n - 1; ++pick) {
        target -= d2[pick];
        if (target < 0) break;
      }
      while (d2[pick] == 0 && pick > 0) --pick;
    } else {
      pick = static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(n));
    }
    centers.row(c) = x.row(pick);
    d2 = d2.cwiseMin((x.rowwise() - centers.row(c)).rowwise().squaredNorm());
  }

  Run run;
  run.labels.assign(n, -1);
  for (int it = 0; it < max_iterations; ++it) {
    bool changed = false;
    double inertia = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      int best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (int c = 0; c < k; ++c) {
        double d = (x.row(i) - centers.row(c)).squaredNorm();
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      if (run.labels[i] != best) {
        run.labels[i] = best;
        changed = true;
      }
      inertia += best_d;
    }
    run.inertia = inertia;
    if (!changed) break;

    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(k, x.cols());
    std::vector<int> count(k, 0);
    for (Eigen::Index i = 0; i < n; ++i) {
      sum.row(run.labels[i]) += x.row(i);
      ++count[run.labels[i]];
    }
    for (int c = 0; c < k; ++c) {
      if (count[c] > 0) {
        centers.row(c) = sum.row(c) / count[c];
        continue;
      }
      // Empty cluster: move it to the point farthest from its center.
      Eigen::Index far = 0;
      double far_d = -1;
      for (Eigen::Index i = 0; i < n; ++i) {
        double d = (x.row(i) - centers.row(run.labels[i])).squaredNorm();
        if (d > far_d) {
          far_d = d;
          far = i;
        }
      }
      centers.row(c) = x.row(far);
    }
  }
  return run;
}

double choose2(double v) { return v * (v - 1) / 2; }

}  // namespace

std::vector<int> kmeans(const Eigen::MatrixXd& x, int k, std::uint64_t seed,
                        const KMeansOptions& opts) {
  if (k < 1) throw InvalidArgumentError("k must be positive");
  if (k > x.rows()) throw InvalidArgumentError("k exceeds the number of points");
  if (opts.restarts < 1) throw InvalidArgumentError("restarts must be positive");
  Run best;
  for (int r = 0; r < opts.restarts; ++r) {
    Run run = lloyd(x, k, derive_seed(seed, static_cast<std::uint64_t>(r)), opts.max_iterations);
    if (run.inertia < best.inertia) best = std::move(run);
  }
  return best.labels;
}

double adjusted_rand_index(std::span<const int> a, std::span<const int> b) {
  if (a.size() != b.size()) throw InvalidArgumentError("labelings differ in length");
  const double n = static_cast<double>(a.size());
  std::map<std::pair<int, int>, double> joint;
  std::map<int, double> ca, cb;
  for (std::size_t i = 0; i < a.size(); ++i) {
    joint[{a[i], b[i]}] += 1;
    ca[a[i]] += 1;
    cb[b[i]] += 1;
  }
  double index = 0, sa = 0, sb = 0;
  for (const auto& [key, v] : joint) index += choose2(v);
  for (const auto& [key, v] : ca) sa += choose2(v);
  for (const auto& [key, v] : cb) sb += choose2(v);
  const double total = choose2(n);
  if (total == 0) return 1.0;
  const double expected = sa * sb / total;
  const double max_index = 0.5 * (sa + sb);
  if (max_index == expected) return 1.0;
  return (index - expected) / (max_index - expected);
}

}  // namespace topf
