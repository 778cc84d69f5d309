// Subcommand implementations behind the `spares` executable.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace spares::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitInfeasible = 2;

/// Parses `args` (without the program name) and runs the chosen subcommand.
/// Reports go to `out`, diagnostics to `err`; returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spares::cli
