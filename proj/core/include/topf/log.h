#pragma once

#include <iostream>
#include <string_view>

namespace topf {

enum class LogLevel { kQuiet = 0, kWarning = 1, kInfo = 2, kDebug = 3 };

// Process-wide verbosity; the CLI sets it from --verbose/--quiet.
inline LogLevel& log_level() {
  static LogLevel level = LogLevel::kWarning;
  return level;
}

inline void log(LogLevel level, std::string_view msg) {
  if (level > log_level() || level == LogLevel::kQuiet) return;
  static constexpr const char* kTag[] = {"", "warning", "info", "debug"};
  std::cerr << "[topf " << kTag[static_cast<int>(level)] << "] " << msg << '\n';
}

inline void log_warning(std::string_view msg) { log(LogLevel::kWarning, msg); }
inline void log_info(std::string_view msg) { log(LogLevel::kInfo, msg); }
inline void log_debug(std::string_view msg) { log(LogLevel::kDebug, msg); }

}  // namespace topf
