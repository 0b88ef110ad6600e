#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace swarmroute::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 1,
  kNoSolution = 2,
};

/// Runs one invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace swarmroute::cli
