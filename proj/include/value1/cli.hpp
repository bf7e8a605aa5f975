#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace value1 {

/// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitInputError = 1,
  kExitResourceLimit = 2,
};

/// Runs one command. `args` excludes the program name. Reports go to `out`,
/// diagnostics to `err`; a missing or "-" input path reads from `in`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace value1
