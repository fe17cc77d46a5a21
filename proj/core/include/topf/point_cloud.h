#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace topf {

// Label given to points appended by add_outliers().
inline constexpr int kOutlierLabel = -1;

// A finite set of points in R^n, optionally labelled. Coordinates are stored
// row-major. Immutable once constructed; every constructor validates.
class PointCloud {
 public:
  PointCloud() = default;
  PointCloud(int ambient_dim, std::vector<double> coords,
             std::optional<std::vector<int>> labels = std::nullopt);

  int ambient_dim() const { return ambient_dim_; }
  std::size_t size() const {
    return ambient_dim_ == 0 ? 0 : coords_.size() / ambient_dim_;
  }
  bool empty() const { return size() == 0; }

  std::span<const double> point(std::size_t i) const {
    return {coords_.data() + i * ambient_dim_,
            static_cast<std::size_t>(ambient_dim_)};
  }
  double coord(std::size_t i, int axis) const {
    return coords_[i * ambient_dim_ + axis];
  }
  const std::vector<double>& coords() const { return coords_; }

  bool has_labels() const { return labels_.has_value(); }
  const std::vector<int>& labels() const { return *labels_; }
  const std::optional<std::vector<int>>& maybe_labels() const { return labels_; }

  // Number of distinct labels (0 without labels). Outliers count as a label.
  int label_count() const;

  // Squared Euclidean distance between points i and j.
  double squared_distance(std::size_t i, std::size_t j) const;
  double distance(std::size_t i, std::size_t j) const;

  // Returns a copy with rows reordered: row r of the result is row perm[r].
  PointCloud permuted(std::span<const std::size_t> perm) const;

  friend bool operator==(const PointCloud&, const PointCloud&) = default;

 private:
  int ambient_dim_ = 0;
  std::vector<double> coords_;
  std::optional<std::vector<int>> labels_;
};

enum class TextFormat { kCsv, kWhitespace };

struct LoadOptions {
  TextFormat format = TextFormat::kCsv;
  // Interpret the final column of every row as an integer label.
  bool label_column = false;
};

PointCloud load_point_cloud(const std::string& path, const LoadOptions& opts = {});
PointCloud parse_point_cloud(const std::string& text, const LoadOptions& opts = {});

// Writes one point per row with round-trip precision. Labels, if present,
// go to a trailing integer column.
void save_point_cloud(const PointCloud& pc, const std::string& path,
                      TextFormat format = TextFormat::kCsv);
std::string format_point_cloud(const PointCloud& pc,
                               TextFormat format = TextFormat::kCsv);

// Perturbs every coordinate with i.i.d. N(0, sigma^2). sigma == 0 returns the
// input unchanged.
PointCloud add_gaussian_noise(const PointCloud& pc, double sigma,
                              std::uint64_t seed);

// Appends `count` points drawn from an axis-aligned Gaussian centred at the
// centroid whose per-axis standard deviation equals the cloud's. New points
// carry kOutlierLabel (existing points without labels get label 0).
PointCloud add_outliers(const PointCloud& pc, int count, std::uint64_t seed);

}  // namespace topf
