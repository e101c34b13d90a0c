#pragma once

#include <iosfwd>

namespace aanet::cli {

/// Process exit codes.
enum ExitCode : int {
  kSuccess = 0,
  kUsage = 1,
  kNoRoute = 2,
  kConfigError = 3,
  kDataError = 4,
  kIoError = 5,
};

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace aanet::cli
