#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace seqspace::cli {

inline constexpr std::string_view version = "0.1.0";

inline constexpr int exit_member = 0;
inline constexpr int exit_non_member = 1;
inline constexpr int exit_inconclusive = 2;
inline constexpr int exit_failure = 3;  // computational error (NotNormable, SingularDiagonal, ...)
inline constexpr int exit_usage = 64;

// args excludes the program name. Writes exactly one report to `out`.
int run(const std::vector<std::string>& args, std::ostream& out);

} // namespace seqspace::cli
