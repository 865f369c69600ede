#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hubbard {

enum ExitCode : int { exit_success = 0, exit_usage = 1, exit_partial_failure = 2 };

/// hubbard-ev command line: scan-u, scan-n, scan-mz and validate.
/// Data goes to `out` (or --out), diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Same, with the arguments after the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hubbard
