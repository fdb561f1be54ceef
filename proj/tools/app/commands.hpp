#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fracspec::app {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kInvalidInput = 2 };

/// Runs the command line `args` (without the program name).  The JSON report
/// goes to `out`, diagnostics to `err`; returns the process exit code.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace fracspec::app
