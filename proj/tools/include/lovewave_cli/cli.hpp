#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lovewave::cli {

enum ExitCode : int { kSuccess = 0, kMathFailure = 1, kUsageOrIo = 2 };

// Runs the command line front end. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Worker count from LOVEWAVE_WORKERS, or 0 (hardware concurrency) when unset
// or not a positive integer.
int workers_from_env();

}  // namespace lovewave::cli
