#pragma once

#include <iosfwd>

namespace parcc::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,     // bad flags or parameter values
  kInput = 3,     // unreadable or malformed input, output I/O failure
  kInternal = 4,  // contract violation or protocol fault
};

/// Entry point behind the `parcc` executable: subcommands connect, stats,
/// generate and bench. Reports go to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace parcc::cli
