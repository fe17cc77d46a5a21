#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "topf/point_cloud.h"

namespace topf {

// The seven labelled clouds of the topological clustering benchmark suite.
enum class BenchmarkName {
  kFourSpheres,
  kEllipses,
  kSpheresGrid,
  kHalvedCircle,
  kTwoSpheresTwoCircles,
  kSphereInCircle,
  kSpaceship,
};

struct BenchmarkSpec {
  BenchmarkName name = BenchmarkName::kFourSpheres;
  std::uint64_t seed = 0;
  // Multiplies every point count; 1.0 gives the reference sizes.
  double scale = 1.0;
};

const std::vector<BenchmarkName>& all_benchmarks();
std::string_view benchmark_name(BenchmarkName name);
// Accepts the canonical names plus common spellings ("2Spheres2Circles",
// "Spheres+Grid", "SphereinCircle", ...), case-insensitively.
std::optional<BenchmarkName> parse_benchmark_name(std::string_view text);
// Throws InvalidArgumentError for unknown names.
BenchmarkName benchmark_from_string(std::string_view text);

int benchmark_ambient_dim(BenchmarkName name);
int benchmark_cluster_count(BenchmarkName name);
// Point count at scale 1.0.
int benchmark_reference_size(BenchmarkName name);

// Deterministic in (name, seed, scale).
PointCloud generate_benchmark(const BenchmarkSpec& config);

}  // namespace topf
