#include "topf/tcbs.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "topf/error.h"
#include "topf/random.h"

namespace topf {

namespace {

using Vec3 = std::array<double, 3>;

// Accumulates points and labels while a dataset is assembled.
class CloudBuilder {
 public:
  CloudBuilder(int dim, std::uint64_t seed, double scale)
      : dim_(dim), rng_(seed), scale_(scale) {}

  int scaled(int count) const {
    return std::max(6, static_cast<int>(std::llround(count * scale_)));
  }

  // Circle of radius r around `center`, spanned by orthonormal u, v.
  void circle(const Vec3& center, double r, const Vec3& u, const Vec3& v,
              int count, double noise, int label) {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    for (int i = 0, n = scaled(count); i < n; ++i) {
      double a = angle(rng_);
      double c = std::cos(a) * r, s = std::sin(a) * r;
      add({center[0] + c * u[0] + s * v[0], center[1] + c * u[1] + s * v[1],
           center[2] + c * u[2] + s * v[2]},
          noise, label);
    }
  }

  // Arc of the circle of radius r about (cx, cy) between angles a0 and a1.
  void arc(double cx, double cy, double r, double a0, double a1, int count,
           double noise, int label) {
    std::uniform_real_distribution<double> angle(a0, a1);
    for (int i = 0, n = scaled(count); i < n; ++i) {
      double a = angle(rng_);
      add({cx + r * std::cos(a), cy + r * std::sin(a), 0.0}, noise, label);
    }
  }

  // Ellipse with semi-axes (a, b) rotated by `angle` in the xy-plane.
  void ellipse(double cx, double cy, double a, double b, double rotation,
               int count, double noise, int label) {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    double cr = std::cos(rotation), sr = std::sin(rotation);
    for (int i = 0, n = scaled(count); i < n; ++i) {
      double t = angle(rng_);
      double x = a * std::cos(t), y = b * std::sin(t);
      add({cx + cr * x - sr * y, cy + sr * x + cr * y, 0.0}, noise, label);
    }
  }

  void sphere(const Vec3& center, double r, int count, double noise, int label) {
    std::normal_distribution<double> g(0.0, 1.0);
    for (int i = 0, n = scaled(count); i < n; ++i) {
      Vec3 d{g(rng_), g(rng_), g(rng_)};
      double len = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
      add({center[0] + r * d[0] / len, center[1] + r * d[1] / len,
           center[2] + r * d[2] / len},
          noise, label);
    }
  }

  void segment(const Vec3& a, const Vec3& b, int count, double noise, int label) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0, n = scaled(count); i < n; ++i) {
      double t = unit(rng_);
      add({a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]),
           a[2] + t * (b[2] - a[2])},
          noise, label);
    }
  }

  // Regular nx-by-ny lattice with spacing h starting at (x0, y0). Under
  // scaling the lattice keeps its extent and changes its resolution.
  void grid(double x0, double y0, int nx, int ny, double h, double jitter,
            int label) {
    double f = std::sqrt(scale_);
    int mx = std::max(2, static_cast<int>(std::llround(nx * f)));
    int my = std::max(2, static_cast<int>(std::llround(ny * f)));
    double hx = h * (nx - 1) / (mx - 1), hy = h * (ny - 1) / (my - 1);
    for (int i = 0; i < mx; ++i) {
      for (int j = 0; j < my; ++j) add({x0 + i * hx, y0 + j * hy, 0.0}, jitter, label);
    }
  }

  PointCloud build() && {
    return PointCloud(dim_, std::move(coords_), std::move(labels_));
  }

 private:
  void add(const Vec3& p, double noise, int label) {
    std::normal_distribution<double> g(0.0, noise > 0.0 ? noise : 1.0);
    for (int k = 0; k < dim_; ++k) coords_.push_back(p[k] + (noise > 0.0 ? g(rng_) : 0.0));
    labels_.push_back(label);
  }

  int dim_;
  std::mt19937_64 rng_;
  double scale_;
  std::vector<double> coords_;
  std::vector<int> labels_;
};

constexpr Vec3 kX{1, 0, 0}, kY{0, 1, 0}, kZ{0, 0, 1};

// Geometry constants for each dataset. Positions are chosen so that the
// labelled structures are separated by gaps comparable to their sampling
// density; noise is isotropic Gaussian per point.

PointCloud four_spheres(CloudBuilder b) {
  constexpr double kNoise = 0.03;
  b.circle({0.0, 0.0, 0}, 1.0, kX, kY, 200, kNoise, 0);
  b.circle({2.5, 0.0, 0}, 1.2, kX, kY, 216, kNoise, 1);
  b.circle({0.2, 2.0, 0}, 0.6, kX, kY, 120, kNoise, 2);
  b.circle({2.6, 2.3, 0}, 0.8, kX, kY, 120, kNoise, 3);
  return std::move(b).build();
}

PointCloud ellipses(CloudBuilder b) {
  constexpr double kNoise = 0.02;
  b.ellipse(0.0, 0.0, 1.2, 0.5, 0.0, 60, kNoise, 0);
  b.ellipse(3.0, 0.4, 0.9, 0.6, std::numbers::pi / 6, 50, kNoise, 1);
  b.ellipse(1.4, 2.0, 1.0, 0.45, -std::numbers::pi / 9, 48, kNoise, 2);
  return std::move(b).build();
}

PointCloud spheres_grid(CloudBuilder b) {
  constexpr double kNoise = 0.02;
  b.circle({0.0, 0.0, 0}, 1.0, kX, kY, 190, kNoise, 0);
  b.circle({3.2, 0.0, 0}, 0.8, kX, kY, 148, kNoise, 1);
  b.grid(0.0, 1.6, 24, 22, 0.1, 0.0, 2);
  return std::move(b).build();
}

PointCloud halved_circle(CloudBuilder b) {
  constexpr double kNoise = 0.015;
  b.arc(0.0, 0.0, 1.0, 0.0, std::numbers::pi, 85, kNoise, 0);
  b.arc(0.0, 0.0, 1.0, std::numbers::pi, 2.0 * std::numbers::pi, 85, kNoise, 1);
  b.segment({-0.97, 0.0, 0.0}, {0.97, 0.0, 0.0}, 79, kNoise, 2);
  return std::move(b).build();
}

PointCloud two_spheres_two_circles(CloudBuilder b) {
  constexpr double kNoise = 0.02;
  b.sphere({0.0, 0.0, 0.0}, 1.0, 1800, kNoise, 0);
  b.sphere({3.5, 0.0, 0.0}, 1.0, 1800, kNoise, 1);
  b.circle({0.0, 3.5, 0.0}, 1.0, kX, kY, 500, kNoise, 2);
  b.circle({3.5, 3.5, 0.0}, 1.0, kX, kZ, 500, kNoise, 3);
  return std::move(b).build();
}

PointCloud sphere_in_circle(CloudBuilder b) {
  constexpr double kNoise = 0.02;
  b.sphere({0, 0, 0}, 1.0, 160, kNoise, 0);
  b.circle({0, 0, 0}, 2.2, kX, kY, 107, kNoise, 1);
  return std::move(b).build();
}

PointCloud spaceship(CloudBuilder b) {
  constexpr double kNoise = 0.02;
  b.sphere({0, 0, 0}, 1.0, 350, kNoise, 0);
  b.circle({0, 0, 0}, 2.0, kX, kY, 200, kNoise, 1);
  b.circle({3.6, 0, 0}, 0.6, kY, kZ, 100, kNoise, 2);
  return std::move(b).build();
}

std::string lower_alnum(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
  }
  return out;
}

}  // namespace

const std::vector<BenchmarkName>& all_benchmarks() {
  static const std::vector<BenchmarkName> kAll = {
      BenchmarkName::kFourSpheres,          BenchmarkName::kEllipses,
      BenchmarkName::kSpheresGrid,          BenchmarkName::kHalvedCircle,
      BenchmarkName::kTwoSpheresTwoCircles, BenchmarkName::kSphereInCircle,
      BenchmarkName::kSpaceship,
  };
  return kAll;
}

std::string_view benchmark_name(BenchmarkName name) {
  switch (name) {
    case BenchmarkName::kFourSpheres: return "4Spheres";
    case BenchmarkName::kEllipses: return "Ellipses";
    case BenchmarkName::kSpheresGrid: return "SpheresGrid";
    case BenchmarkName::kHalvedCircle: return "HalvedCircle";
    case BenchmarkName::kTwoSpheresTwoCircles: return "TwoSpheresTwoCircles";
    case BenchmarkName::kSphereInCircle: return "SphereInCircle";
    case BenchmarkName::kSpaceship: return "Spaceship";
  }
  return "?";
}

std::optional<BenchmarkName> parse_benchmark_name(std::string_view text) {
  std::string key = lower_alnum(text);
  if (key == "4spheres" || key == "fourspheres") return BenchmarkName::kFourSpheres;
  if (key == "ellipses") return BenchmarkName::kEllipses;
  if (key == "spheresgrid") return BenchmarkName::kSpheresGrid;
  if (key == "halvedcircle") return BenchmarkName::kHalvedCircle;
  if (key == "twospherestwocircles" || key == "2spheres2circles") {
    return BenchmarkName::kTwoSpheresTwoCircles;
  }
  if (key == "sphereincircle") return BenchmarkName::kSphereInCircle;
  if (key == "spaceship") return BenchmarkName::kSpaceship;
  return std::nullopt;
}

BenchmarkName benchmark_from_string(std::string_view text) {
  auto name = parse_benchmark_name(text);
  if (!name) throw InvalidArgumentError("unknown benchmark dataset '" + std::string(text) + "'");
  return *name;
}

int benchmark_ambient_dim(BenchmarkName name) {
  switch (name) {
    case BenchmarkName::kTwoSpheresTwoCircles:
    case BenchmarkName::kSphereInCircle:
    case BenchmarkName::kSpaceship:
      return 3;
    default:
      return 2;
  }
}

int benchmark_cluster_count(BenchmarkName name) {
  switch (name) {
    case BenchmarkName::kFourSpheres: return 4;
    case BenchmarkName::kEllipses: return 3;
    case BenchmarkName::kSpheresGrid: return 3;
    case BenchmarkName::kHalvedCircle: return 3;
    case BenchmarkName::kTwoSpheresTwoCircles: return 4;
    case BenchmarkName::kSphereInCircle: return 2;
    case BenchmarkName::kSpaceship: return 3;
  }
  return 0;
}

int benchmark_reference_size(BenchmarkName name) {
  switch (name) {
    case BenchmarkName::kFourSpheres: return 656;
    case BenchmarkName::kEllipses: return 158;
    case BenchmarkName::kSpheresGrid: return 866;
    case BenchmarkName::kHalvedCircle: return 249;
    case BenchmarkName::kTwoSpheresTwoCircles: return 4600;
    case BenchmarkName::kSphereInCircle: return 267;
    case BenchmarkName::kSpaceship: return 650;
  }
  return 0;
}

PointCloud generate_benchmark(const BenchmarkSpec& config) {
  if (!(config.scale > 0.0)) throw InvalidArgumentError("scale must be positive");
  CloudBuilder b(benchmark_ambient_dim(config.name),
                 derive_seed(config.seed, static_cast<std::uint64_t>(config.name)),
                 config.scale);
  switch (config.name) {
    case BenchmarkName::kFourSpheres: return four_spheres(std::move(b));
    case BenchmarkName::kEllipses: return ellipses(std::move(b));
    case BenchmarkName::kSpheresGrid: return spheres_grid(std::move(b));
    case BenchmarkName::kHalvedCircle: return halved_circle(std::move(b));
    case BenchmarkName::kTwoSpheresTwoCircles: return two_spheres_two_circles(std::move(b));
    case BenchmarkName::kSphereInCircle: return sphere_in_circle(std::move(b));
    case BenchmarkName::kSpaceship: return spaceship(std::move(b));
  }
  throw InvalidArgumentError("unknown benchmark dataset");
}

}  // namespace topf
