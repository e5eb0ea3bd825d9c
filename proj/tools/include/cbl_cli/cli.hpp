#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cbl::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kHypothesis = 2,
  kBudget = 3,
  kInternal = 4,
};

/// Runs the `cbl` command line with the given arguments (argv[0] is the
/// program name). Normal output goes to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cbl::cli
