#include "topf/point_cloud.h"

#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string_view>

#include "topf/error.h"

namespace topf {

PointCloud::PointCloud(int ambient_dim, std::vector<double> coords,
                       std::optional<std::vector<int>> labels)
    : ambient_dim_(ambient_dim),
      coords_(std::move(coords)),
      labels_(std::move(labels)) {
  if (ambient_dim_ <= 0) {
    throw InvalidArgumentError("ambient dimension must be positive");
  }
  if (coords_.size() % ambient_dim_ != 0) {
    throw FormatError("coordinate count is not a multiple of the dimension");
  }
  for (double c : coords_) {
    if (!std::isfinite(c)) throw InvalidArgumentError("non-finite coordinate");
  }
  if (labels_ && labels_->size() != size()) {
    throw InvalidArgumentError("label count does not match point count");
  }
}

int PointCloud::label_count() const {
  if (!labels_) return 0;
  return static_cast<int>(std::set<int>(labels_->begin(), labels_->end()).size());
}

double PointCloud::squared_distance(std::size_t i, std::size_t j) const {
  const double* a = coords_.data() + i * ambient_dim_;
  const double* b = coords_.data() + j * ambient_dim_;
  double s = 0.0;
  for (int k = 0; k < ambient_dim_; ++k) {
    double d = a[k] - b[k];
    s += d * d;
  }
  return s;
}

double PointCloud::distance(std::size_t i, std::size_t j) const {
  return std::sqrt(squared_distance(i, j));
}

PointCloud PointCloud::permuted(std::span<const std::size_t> perm) const {
  if (perm.size() != size()) throw InvalidArgumentError("permutation size");
  std::vector<double> coords;
  coords.reserve(coords_.size());
  std::optional<std::vector<int>> labels;
  if (labels_) labels.emplace();
  for (std::size_t r : perm) {
    auto p = point(r);
    coords.insert(coords.end(), p.begin(), p.end());
    if (labels_) labels->push_back((*labels_)[r]);
  }
  return PointCloud(ambient_dim_, std::move(coords), std::move(labels));
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_row(std::string_view line, TextFormat format) {
  std::vector<std::string_view> out;
  if (format == TextFormat::kCsv) {
    std::size_t start = 0;
    for (;;) {
      std::size_t comma = line.find(',', start);
      out.push_back(trim(line.substr(start, comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
  } else {
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      std::size_t j = i;
      while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
      if (j > i) out.push_back(line.substr(i, j - i));
      i = j;
    }
  }
  return out;
}

double parse_double(std::string_view tok, int line) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(fmt::format("malformed number '{}'", tok), line);
  }
  if (!std::isfinite(v)) {
    throw ParseError(fmt::format("non-finite value '{}'", tok), line);
  }
  return v;
}

int parse_label(std::string_view tok, int line) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(fmt::format("malformed integer label '{}'", tok), line);
  }
  return v;
}

}  // namespace

PointCloud parse_point_cloud(const std::string& text, const LoadOptions& opts) {
  std::vector<double> coords;
  std::vector<int> labels;
  int columns = -1;
  int line_no = 0;
  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    auto tokens = split_row(line, opts.format);
    int n = static_cast<int>(tokens.size());
    if (columns < 0) {
      columns = n;
      if (columns - (opts.label_column ? 1 : 0) < 1) {
        throw FormatError(fmt::format("line {}: no coordinate columns", line_no));
      }
    } else if (n != columns) {
      throw FormatError(fmt::format("line {}: expected {} columns, found {}",
                                    line_no, columns, n));
    }
    int coord_cols = opts.label_column ? columns - 1 : columns;
    for (int c = 0; c < coord_cols; ++c) {
      coords.push_back(parse_double(tokens[c], line_no));
    }
    if (opts.label_column) labels.push_back(parse_label(tokens.back(), line_no));
  }
  if (columns < 0) throw EmptyInputError("input contains no points");
  int dim = opts.label_column ? columns - 1 : columns;
  std::optional<std::vector<int>> maybe_labels;
  if (opts.label_column) maybe_labels = std::move(labels);
  return PointCloud(dim, std::move(coords), std::move(maybe_labels));
}

PointCloud load_point_cloud(const std::string& path, const LoadOptions& opts) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgumentError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_point_cloud(ss.str(), opts);
}

std::string format_point_cloud(const PointCloud& pc, TextFormat format) {
  const char* sep = format == TextFormat::kCsv ? "," : " ";
  std::string out;
  for (std::size_t i = 0; i < pc.size(); ++i) {
    auto p = pc.point(i);
    for (int k = 0; k < pc.ambient_dim(); ++k) {
      if (k > 0) out += sep;
      out += fmt::format("{}", p[k]);
    }
    if (pc.has_labels()) {
      out += sep;
      out += fmt::format("{}", pc.labels()[i]);
    }
    out += '\n';
  }
  return out;
}

void save_point_cloud(const PointCloud& pc, const std::string& path,
                      TextFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgumentError("cannot write " + path);
  out << format_point_cloud(pc, format);
}

PointCloud add_gaussian_noise(const PointCloud& pc, double sigma,
                              std::uint64_t seed) {
  if (!(sigma >= 0.0)) throw InvalidArgumentError("sigma must be nonnegative");
  if (sigma == 0.0) return pc;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, sigma);
  std::vector<double> coords = pc.coords();
  for (double& c : coords) c += noise(rng);
  return PointCloud(pc.ambient_dim(), std::move(coords), pc.maybe_labels());
}

PointCloud add_outliers(const PointCloud& pc, int count, std::uint64_t seed) {
  if (count < 0) throw InvalidArgumentError("outlier count must be nonnegative");
  if (pc.empty()) throw EmptyInputError("cannot add outliers to an empty cloud");
  if (count == 0) return pc;
  const int dim = pc.ambient_dim();
  const double n = static_cast<double>(pc.size());
  std::vector<double> mean(dim, 0.0), stddev(dim, 0.0);
  for (std::size_t i = 0; i < pc.size(); ++i) {
    for (int k = 0; k < dim; ++k) mean[k] += pc.coord(i, k);
  }
  for (double& m : mean) m /= n;
  for (std::size_t i = 0; i < pc.size(); ++i) {
    for (int k = 0; k < dim; ++k) {
      double d = pc.coord(i, k) - mean[k];
      stddev[k] += d * d;
    }
  }
  for (double& s : stddev) s = std::sqrt(s / n);

  std::vector<double> coords = pc.coords();
  std::vector<int> labels =
      pc.has_labels() ? pc.labels() : std::vector<int>(pc.size(), 0);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> unit(0.0, 1.0);
  for (int j = 0; j < count; ++j) {
    for (int k = 0; k < dim; ++k) coords.push_back(mean[k] + stddev[k] * unit(rng));
    labels.push_back(kOutlierLabel);
  }
  return PointCloud(dim, std::move(coords), std::move(labels));
}

}  // namespace topf
