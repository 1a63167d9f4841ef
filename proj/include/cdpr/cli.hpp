#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cdpr::cli {

enum ExitCode : int { kSuccess = 0, kUsageError = 1, kInfeasible = 2, kSolverFailure = 3 };

/// Entry point of the cdpr-tension tool; argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
/// Same, with the arguments after the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cdpr::cli
