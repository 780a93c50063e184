#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cogrowth::cli {

enum ExitCode : int {
  kOk = 0,
  kParse = 2,
  kPrecondition = 3,
  kNoCutVertex = 4,
  kNoValidAutomorphism = 5,
  kNumerical = 6,
};

/// Runs the command line `args` (without the program name). Normal output
/// goes to `out` unless --out names a file; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cogrowth::cli
