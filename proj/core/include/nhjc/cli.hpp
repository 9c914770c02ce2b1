#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace nhjc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitIo = 2;

/// Entry point of the `nhjc` tool. Subcommands: spectrum, phase-map, metric,
/// entropy, dynamics, exponent. Returns the process exit code.
int cli_main(std::span<const std::string> args, std::ostream& out, std::ostream& err);
int cli_main(int argc, const char* const* argv);

}  // namespace nhjc::cli
