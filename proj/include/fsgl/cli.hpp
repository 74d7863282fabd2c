#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fsgl {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsage = 2;

/// Entry point for the `fsgl` tool: subcommands gen, solve, bench, cheeger-check.
/// `--config FILE` reads flat `key = value` lines that override command-line flags.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace fsgl
