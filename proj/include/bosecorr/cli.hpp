#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bosecorr {

/// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitVerificationFailed = 1,
  kExitUsage = 2,
  kExitInputFormat = 3,
};

/// Runs one CLI invocation; args exclude the program name. Data goes to
/// out, diagnostics to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bosecorr
