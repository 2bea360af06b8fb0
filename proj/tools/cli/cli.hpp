#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace contrastfix::cli {

/// Process exit codes. Nothing else is ever returned.
enum ExitCode : int {
    kOk = 0,
    kAccessibilityFailure = 1,
    kUsageError = 2,
};

/// Parses `args` (without the program name) and runs the selected subcommand.
/// All output goes to `out` / `err`, so tests can drive the full command line.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace contrastfix::cli
