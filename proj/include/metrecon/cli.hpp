#pragma once

#include <iosfwd>

namespace metrecon {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

/// Entry point of the `metrecon` tool. Subcommands: reconstruct, eval,
/// betti, synth, bench.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace metrecon
