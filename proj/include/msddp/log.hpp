#pragma once

#include <string>

namespace msddp {

enum class LogLevel { Error = 0, Info = 1, Debug = 2 };

/// Current threshold, parsed once from MSDDP_LOG (error|info|debug).
LogLevel log_level();

bool log_enabled(LogLevel level);

/// Writes one line to stderr when `level` is enabled. Never touches stdout,
/// so machine-readable output stays clean.
void log_line(LogLevel level, const std::string& message);

inline void log_info(const std::string& m) { log_line(LogLevel::Info, m); }
inline void log_debug(const std::string& m) { log_line(LogLevel::Debug, m); }
inline void log_error(const std::string& m) { log_line(LogLevel::Error, m); }

}  // namespace msddp
