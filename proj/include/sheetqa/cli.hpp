#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sheetqa {

/// Runs one CLI invocation (argv without the program name). Returns the
/// process exit code: 0 success, 1 validation/usage error, 2 I/O error.
/// Output files are only written after a subcommand fully succeeds.
int run_command(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace sheetqa
