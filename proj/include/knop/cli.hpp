#pragma once

#include <iosfwd>

namespace knop::cli {

/// Exit statuses of the knop command.
enum ExitStatus : int {
  kOk = 0,
  kCheckFailed = 1,  // validation or theorem check failed, bad document
  kUsage = 2,
  kIo = 3,
};

/// Runs one invocation. Machine-readable output (JSON, DOT) goes to `out`
/// unless --output is given; human-readable messages go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace knop::cli
