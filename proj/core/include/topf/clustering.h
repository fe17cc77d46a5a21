#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace topf {

struct KMeansOptions {
  int restarts = 10;
  int max_iterations = 300;
};

// Lloyd's algorithm with k-means++ seeding on the rows of `x`; the restart
// with the lowest inertia wins. Deterministic in (x, k, seed, options).
std::vector<int> kmeans(const Eigen::MatrixXd& x, int k, std::uint64_t seed,
                        const KMeansOptions& opts = {});

// Adjusted Rand index of two labelings of the same items.
double adjusted_rand_index(std::span<const int> a, std::span<const int> b);

}  // namespace topf
