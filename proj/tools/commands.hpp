#ifndef ZD_TOOLS_COMMANDS_HPP
#define ZD_TOOLS_COMMANDS_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace zd::cli {

// Exit codes shared by all subcommands.
inline constexpr int kOk = 0;
inline constexpr int kInfeasible = 1;
inline constexpr int kInvalidInput = 2;

// Runs the zdtool command line; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace zd::cli

#endif  // ZD_TOOLS_COMMANDS_HPP
