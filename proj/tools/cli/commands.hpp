#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pgld::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitUsage = 2;

/// Parses argv (argv[0] is the program name) and dispatches to the
/// `verify`, `sweep` or `export` subcommand. Returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pgld::cli
