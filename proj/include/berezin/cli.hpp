#pragma once

#include <iosfwd>

namespace berezin {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { kExitOk = 0, kExitViolated = 1, kExitInput = 2, kExitNumeric = 3 };

/// Entry point of the berezin-lab tool. Results go to `out` unless --out names a file.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace berezin
