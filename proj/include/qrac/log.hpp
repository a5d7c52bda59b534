#pragma once

#include <string>

namespace qrac {

enum class LogLevel { error = 0, info = 1, debug = 2 };

/// Verbosity from the QRAC_LOG environment variable ("error", "info",
/// "debug"); defaults to error. Diagnostics go to standard error only.
LogLevel log_level();

void log_info(const std::string& message);
void log_debug(const std::string& message);

} // namespace qrac
