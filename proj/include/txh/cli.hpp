#pragma once

#include <ostream>

namespace txh::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int {
    ok = 0,
    io_failure = 1,
    config_error = 2,
    numerical_error = 3,
};

/// Parses argv, runs one subcommand and writes the report to --out (atomically)
/// or to `out`. Diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace txh::cli
