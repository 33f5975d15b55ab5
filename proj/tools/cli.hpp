#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace primeset::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Exit codes. Every nonzero code is accompanied by an error record on `out`.
enum ExitCode : int {
    kOk = 0,
    kFailure = 1,      // unexpected internal error
    kUsageError = 2,   // bad flags, missing arguments, malformed constraint text
    kDomainError = 3,  // well-formed input outside an operation's domain or bounds
};

/// Runs one invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace primeset::cli
