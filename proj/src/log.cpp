#include "msddp/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace msddp {

LogLevel log_level() {
  static const LogLevel level = [] {
    const char* env = std::getenv("MSDDP_LOG");
    if (!env) return LogLevel::Error;
    if (std::strcmp(env, "debug") == 0) return LogLevel::Debug;
    if (std::strcmp(env, "info") == 0) return LogLevel::Info;
    return LogLevel::Error;
  }();
  return level;
}

bool log_enabled(LogLevel level) {
  return static_cast<int>(level) <= static_cast<int>(log_level());
}

void log_line(LogLevel level, const std::string& message) {
  if (!log_enabled(level)) return;
  const char* tag = level == LogLevel::Error ? "error"
                    : level == LogLevel::Info ? "info"
                                              : "debug";
  std::fprintf(stderr, "[msddp %s] %s\n", tag, message.c_str());
}

}  // namespace msddp
