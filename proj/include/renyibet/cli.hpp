#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace renyibet::cli {

enum ExitCode : int {
  kOk = 0,
  kValidation = 2,
  kPropertyViolation = 3,
  kSingularity = 4,
};

/// Runs one invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace renyibet::cli
