#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nuctrace::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitNumerical = 3;

/// Parses `args` (without the program name), runs the subcommand and writes
/// the report to `out` (or the --output file). Diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nuctrace::cli
