#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace graphcrop::cli {

enum ExitCode : int {
    Success = 0,
    UsageFailure = 1,
    DataFailure = 2,
    VerificationFailure = 3,
};

/// Entry point behind the graphcrop executable. Human-readable and JSON
/// output goes to `out`, diagnostics to `err`.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

/// Convenience overload; args excludes the program name.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace graphcrop::cli
