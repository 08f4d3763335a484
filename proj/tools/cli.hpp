#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace inplace::cli {

enum ExitCode : int { kOk = 0, kFailed = 1, kBadArgs = 2 };

/// Runs the command line `args` (without the program name), writing results
/// to `out` and diagnostics to `err`.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace inplace::cli
