#pragma once

#include <ostream>

namespace uc::cli {

/// Exit codes: 0 success, 2 invalid input, 3 unsupported locale, 4 verification failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitLocale = 3;
inline constexpr int kExitVerify = 4;

/// Parses argv, runs one subcommand, writes one JSON document to out and
/// diagnostics to err.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace uc::cli
