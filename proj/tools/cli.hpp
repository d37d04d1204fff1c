#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mc::cli {

enum ExitCode : int {
  kPass = 0,
  kSemanticFailure = 1,
  kInputError = 2,
  kBudgetExceeded = 3,
};

/// Runs one `mc` command. `args` excludes the program name. The report (or
/// artifact) goes to `out` in one piece once the command has finished;
/// diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mc::cli
