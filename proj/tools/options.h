#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "topf/features.h"
#include "topf/point_cloud.h"
#include "topf/tcbs.h"

namespace topf::cli {

// Where the point cloud comes from: a file or a generated benchmark.
struct InputArgs {
  std::string path;
  std::string bench;
  TextFormat format = TextFormat::kCsv;
  bool label_column = false;
  std::uint64_t seed = 1;
  double scale = 1.0;
};

void add_input_options(CLI::App* cmd, InputArgs& args);
PointCloud load_input(const InputArgs& args);

// Filtration flags only (persistence needs no more).
void add_complex_options(CLI::App* cmd, TopfConfig& cfg);
// Everything the feature pipeline reads.
void add_topf_options(CLI::App* cmd, TopfConfig& cfg);

// Rejects anything parse_benchmark_name() does not know.
CLI::Validator benchmark_validator();

// "-" (or empty) is stdout; otherwise the file is replaced and its path is
// echoed on stdout.
void write_output(const std::string& path, const std::string& content);

}  // namespace topf::cli
