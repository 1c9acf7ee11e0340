#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rfiqkd::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsage = 1,
  kConfigError = 2,
  kIoError = 3,
  kInternalError = 4,
};

/// Entry point behind `main`; args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rfiqkd::cli
