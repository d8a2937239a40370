#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace igape {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;  // validation violations, policy and other model errors
inline constexpr int kExitUsage = 2;   // bad arguments, unreadable or malformed files

/// `args` excludes the program name. Results go to `out`, diagnostics and
/// warnings to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace igape
