#pragma once

#include <iosfwd>

namespace conduct {

// Exit statuses of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitNumerical = 3,
  kExitIo = 4,
};

// Entry point behind the conduct_sim binary: simulate | estimate | power |
// analytic | gain. Per-cell progress and diagnostics go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace conduct
