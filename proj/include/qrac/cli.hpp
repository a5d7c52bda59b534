#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qrac {

/// Runs one CLI invocation (arguments without the program name).
/// Results go to `out`, diagnostics to `err`. Exit codes: 0 success,
/// 1 infeasible or insufficient-statistics result, 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace qrac
