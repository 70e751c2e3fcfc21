#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace xrt::cli {

enum ExitCode : int {
  kOk = 0,
  kValidation = 1,
  kIo = 2,
  kSelftestFailed = 3,
};

/// Entry point shared by the `xrt` binary and the tests.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Rewrites angle-valued key=value pairs from degrees to radians.
std::string degrees_to_radians(const std::string& text);

}  // namespace xrt::cli
