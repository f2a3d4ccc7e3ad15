#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace quiverkit::cli {

enum ExitCode : int { exit_yes = 0, exit_no = 1, exit_unknown = 2, exit_error = 3 };

/// Runs one command. `args` excludes the program name. Machine output goes to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace quiverkit::cli
