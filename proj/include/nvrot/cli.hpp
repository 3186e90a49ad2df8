#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nvrot {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitValidation = 3;

/// Runs the command line @p args (program name excluded). Results go to the
/// configured output (stdout by default, written to @p out); diagnostics go
/// to @p err as a single line. Returns the process exit status.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace nvrot
