#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ermakov::cli {

enum ExitCode : int { kPassed = 0, kCheckFailed = 1, kUsageError = 2 };

/// Runs one subcommand: verify-symmetry, determining, commutators, simulate,
/// pinney, cartan or lagrangian-check. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ermakov::cli
