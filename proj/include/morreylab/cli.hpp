#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace morreylab {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitParse = 3,
  kExitNotIntegrable = 4,
  kExitOracle = 5,
  kExitHypotheses = 6,
  kExitDrift = 7,
};

/// Runs the tool on args (without the program name), writing to out and err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace morreylab
