#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lieflow::cli {

enum ExitCode : int {
  kOk = 0,
  kBadInput = 2,
  kSingular = 3,
  kNotCompleted = 4,
  kDomainError = 5,
  kInvariantFailure = 6,
};

/// Runs one command line (args excludes the program name). Reports go to
/// out, diagnostics to err. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lieflow::cli
