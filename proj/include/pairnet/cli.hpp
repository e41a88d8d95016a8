#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pairnet::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kUsage = 2,     // bad flags or parameter values
  kData = 3,      // missing file, schema or parse failure
  kTraining = 4,  // training failure or model/data mismatch
};

/// Runs one command line (args[0] is the program name) writing reports to
/// `out` and diagnostics to `err`. Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pairnet::cli
