#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace permrex::cli {

/// Exit codes: 0 when every requested check passes, 1 when a check fails,
/// 2 on usage errors (including requests refused by a configured cap).
enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2 };

/// Runs one subcommand. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace permrex::cli
