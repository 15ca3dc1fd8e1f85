#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mmpx::cli {

/// Exit codes of the `mmpx` tool.
enum ExitCode : int {
  kOk = 0,
  kUsage = 1,           // bad flags, unreadable or malformed input, dimension errors
  kNonConvergence = 2,  // a solver hit its application cap
  kInvalid = 3,         // `verify` found a non-zero residual
};

/// Runs the tool on `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mmpx::cli
