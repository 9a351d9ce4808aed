#pragma once

#include <ostream>

namespace mastercount::cli {

/// Runs the `mastercount` command line. Returns the process exit code:
/// 0 success, 1 verification failure, 2 usage or domain error,
/// 3 result contradicting the expected master counting.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Environment variable holding the default precision in digits.
inline constexpr const char* kPrecisionEnv = "MASTERCOUNT_PREC";

}  // namespace mastercount::cli
