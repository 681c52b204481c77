#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace wcx {

/// Exit status of the command line front-end.
enum ExitCode : int { kOk = 0, kCheckFailed = 1, kInputError = 2 };

/// Runs one subcommand; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wcx
