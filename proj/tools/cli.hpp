#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wsnsim {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kSuccess = 0,
  kNumericalFailure = 1, // numerical error or failed check / oracle
  kInputFailure = 2,     // bad flags, unparsable files, invalid configs
};

/// Runs the command line `args` (args[0] is the program name) and returns the
/// process exit code. Regular output goes to `out` unless --out names a file.
int run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err);

} // namespace wsnsim
