#pragma once

#include <functional>

#include <CLI11.hpp>

namespace topf::cli {

// Each registers a subcommand whose callback stores the work to run in
// `action`. The action returns the process exit code and may throw
// topf::Error.
using Action = std::function<int()>;

void add_features_command(CLI::App& app, Action& action);
void add_persistence_command(CLI::App& app, Action& action);
void add_benchmark_command(CLI::App& app, Action& action);
void add_sweep_command(CLI::App& app, Action& action);
void add_generate_command(CLI::App& app, Action& action);

}  // namespace topf::cli
