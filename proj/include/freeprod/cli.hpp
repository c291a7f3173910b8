#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace freeprod::cli {

inline constexpr const char* kReportSchema = "freeprod.report/1";

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kInvalidInput = 2,
  kBudgetExceeded = 3,
};

/// Runs the command line `args` (args[0] is the program name), writing the
/// report to `out` and diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Rounds to 12 significant digits so reports are byte-stable.
double round12(double x);

}  // namespace freeprod::cli
