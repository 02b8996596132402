#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace thermodwell::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitParameter = 1;
inline constexpr int kExitNumerical = 2;

// Runs one CLI invocation; args excludes the program name.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace thermodwell::cli
