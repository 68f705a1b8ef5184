#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace slprime {

inline constexpr const char* kVersion = "0.1.0";

/// Exit codes: 0 success (including a truncated finite spectrum), 2 invalid input or
/// I/O failure, 3 when an analysis verdict is FAIL.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitVerdictFail = 3;

/// Runs one subcommand. args excludes the program name.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace slprime
