#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.h"
#include "topf/error.h"
#include "topf/log.h"

#ifndef TOPF_VERSION
#define TOPF_VERSION "unknown"
#endif
#ifndef TOPF_BUILD_TYPE
#define TOPF_BUILD_TYPE "unknown"
#endif

int main(int argc, char** argv) {
  CLI::App app{"Topological point features: per-point features from harmonic representatives "
               "of significant persistent homology classes."};
  app.name("topf");
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("topf ") + TOPF_VERSION + " (" + TOPF_BUILD_TYPE +
                                        ", " + __VERSION__ + ")");

  bool verbose = false;
  bool quiet = false;
  app.add_flag("-v,--verbose", verbose, "debug output on stderr");
  app.add_flag("-q,--quiet", quiet, "no diagnostics except fatal errors");

  topf::cli::Action action;
  topf::cli::add_features_command(app, action);
  topf::cli::add_persistence_command(app, action);
  topf::cli::add_benchmark_command(app, action);
  topf::cli::add_sweep_command(app, action);
  topf::cli::add_generate_command(app, action);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (quiet) {
    topf::log_level() = topf::LogLevel::kQuiet;
  } else if (verbose) {
    topf::log_level() = topf::LogLevel::kDebug;
  } else {
    topf::log_level() = topf::LogLevel::kInfo;
  }

  try {
    return action();
  } catch (const topf::Error& e) {
    std::cerr << "topf: error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "topf: unexpected error: " << e.what() << '\n';
    return 1;
  }
}
