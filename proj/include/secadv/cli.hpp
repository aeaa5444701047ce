#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace secadv::cli {

// Exit codes. Verdicts never change the exit code.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

// Runs the command line `args` (args[0] is the program name). Reports go to
// --out, or to `out` when --out is "-".
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "a:b:steps" (inclusive of both ends) or "d1,d2,...".
std::vector<double> parse_distance_list(const std::string& spec);

// %.12g
std::string format_number(double v);

}  // namespace secadv::cli
