#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace stackcut::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 1,
  kVerificationFailed = 2,
  kIoError = 3,
};

/// Runs the command line `args` (without the program name). Reports go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses "paper" (given k), a decimal, or a fraction "a/b".
double parse_length_bound(const std::string& text, int k);

}  // namespace stackcut::cli
