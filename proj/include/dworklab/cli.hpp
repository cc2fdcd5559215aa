#pragma once

#include <ostream>

namespace dworklab {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitConfig = 2;

/// Parses argv (argv[0] is the program name), runs one subcommand and writes
/// one JSON document per line to `out` (or to --out). Diagnostics go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dworklab
