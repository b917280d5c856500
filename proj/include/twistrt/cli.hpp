#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace twistrt {

inline constexpr int kReportVersion = 1;

enum ExitCode { kExitOk = 0, kExitSolver = 1, kExitArgs = 2 };

// Parses argv-style arguments (without the program name) and runs one command.
// Reports go to out, diagnostics (cache statistics, warnings) to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace twistrt
