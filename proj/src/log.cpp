#include "qrac/log.hpp"

#include <cstdlib>
#include <iostream>

namespace qrac {

LogLevel log_level() {
    static const LogLevel level = [] {
        const char* env = std::getenv("QRAC_LOG");
        if (env == nullptr) return LogLevel::error;
        const std::string value(env);
        if (value == "debug") return LogLevel::debug;
        if (value == "info") return LogLevel::info;
        return LogLevel::error;
    }();
    return level;
}

void log_info(const std::string& message) {
    if (log_level() >= LogLevel::info) std::cerr << "[info] " << message << "\n";
}

void log_debug(const std::string& message) {
    if (log_level() >= LogLevel::debug) std::cerr << "[debug] " << message << "\n";
}

} // namespace qrac
