#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace psifock {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,  // internal error or verification mismatch
  kExitInvalid = 2,  // unparseable input or data failing validation
  kExitBounds = 3,   // truncation or resource bounds too small
};

/// Entry point of the psifock tool. args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace psifock
