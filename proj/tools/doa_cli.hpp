#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace doa::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidationFailure = 1;
inline constexpr int kExitInputError = 2;

/// Runs one `doa` command line (args[0] is the program name) and returns the
/// process exit code. Reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace doa::cli
