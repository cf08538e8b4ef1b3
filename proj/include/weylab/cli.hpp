#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace weylab::cli {

enum ExitCode : int { kSuccess = 0, kNumericalFailure = 1, kUsageError = 2 };

/// Runs one invocation. `args` excludes the program name. CSV goes to
/// `out` unless -o is given, in which case it is written to a temp file
/// beside the target and renamed into place. Diagnostics go to `err` as
/// `INFO ...`, `WARN ...` or `ERROR <code> <message>` lines.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace weylab::cli
