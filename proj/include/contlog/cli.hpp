#pragma once

#include <iosfwd>

namespace contlog {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,       // parse error or precondition violation
    kExitViolation = 2,   // ran to completion, a checked statement failed
};

/// Entry point behind the `contlog` binary. Writes results to `out` and
/// one-line diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace contlog
