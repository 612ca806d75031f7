#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bci::cli {

// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitData = 2,
  kExitKey = 3,
};

// Runs the command line `args` (args[0] is the program name). Normal output
// goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bci::cli
