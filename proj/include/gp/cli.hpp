#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gp {

// Exit codes of the gp tool.
constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;  // mathematical negative: not a codifferential, no closed form, ...
constexpr int kExitUsage = 2;     // usage, parse or I/O error

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gp
