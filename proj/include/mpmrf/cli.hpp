#pragma once

#include <iosfwd>

namespace mpmrf {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInput = 3;
inline constexpr int kExitNumerical = 4;

/// Entry point of the mpmrf command line tool. Results go to `out` unless an
/// --output file is given; a failure prints one "error: ..." line to `err`
/// and returns the matching exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mpmrf
