#pragma once

#include <ostream>

namespace splab::app {

// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitPass = 0,
  kExitFailure = 1,
  kExitConfig = 2,
  kExitUncertified = 3,
};

// Entry point of the `splab` tool; argv[0] is the program name.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace splab::app
