#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace billiards {

// Exit codes of the command-line tool.
inline constexpr int exit_ok = 0;
inline constexpr int exit_config = 2;
inline constexpr int exit_not_certified = 3;
inline constexpr int exit_unreachable = 4;
inline constexpr int exit_stall = 5;

/// Runs one command (`bound`, `realize`, `verify`, `count`, `simulate`).
/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace billiards
