#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace segre::cli {

/// Exit-code contract of the command-line front end.
enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kUsage = 2,
  kResourceCap = 3,
};

/// Runs the CLI on `args` (without the program name). Records go to `out`,
/// diagnostics to `err`; `--out PATH` redirects the records to a file.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace segre::cli
