#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fnf {

enum ExitCode : int {
  kEquivalent = 0,
  kNotEquivalent = 1,
  kMalformed = 2,
  kNotPsd = 3,
  kInconclusive = 4,
  kNumericalFailure = 5,
};

/// Runs the fnf command line with args (args[0] is the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fnf
