#pragma once

#include <iosfwd>

namespace swsc {

/// Exit statuses of the `swsc` tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitFormat = 2,
  kExitNumerical = 3,
};

/// Entry point of the `swsc` command-line tool, with its streams injectable
/// for testing. Returns the process exit status.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace swsc
