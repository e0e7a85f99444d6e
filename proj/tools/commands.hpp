#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cyheight::cli {

inline constexpr const char* kCacheDirEnv = "CYHEIGHT_CACHE_DIR";

enum ExitCode : int {
    kOk = 0,
    kCheckMismatch = 1,
    kInvalidInput = 2,
    kBudgetExhausted = 3,
};

/// Parses args (without the program name), runs the command and writes the
/// primary output to out and diagnostics to err. Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cyheight::cli
