#pragma once

#include "seqspace/error.hpp"
#include "seqspace/scalar.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace seqspace::detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

inline bool consume(std::string_view& s, std::string_view prefix) {
    if (s.substr(0, prefix.size()) != prefix) return false;
    s.remove_prefix(prefix.size());
    return true;
}

// Split on `delim` at bracket depth zero.
inline std::vector<std::string_view> split_top(std::string_view s, char delim) {
    std::vector<std::string_view> out;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char ch = s[i];
        if (ch == '[') ++depth;
        else if (ch == ']') --depth;
        else if (ch == delim && depth == 0) {
            out.push_back(trim(s.substr(start, i - start)));
            start = i + 1;
        }
    }
    out.push_back(trim(s.substr(start)));
    return out;
}

[[noreturn]] inline void parse_fail(std::string_view token, std::string_view grammar) {
    throw Error(ErrorCode::Parse,
                "cannot parse '" + std::string(token) + "'; expected " + std::string(grammar));
}

std::int64_t parse_int(std::string_view text, std::string_view grammar);

// "[a,b,c]" -> scalars. Empty list allowed.
std::vector<Scalar> parse_scalar_list(std::string_view text, std::string_view grammar);

std::string join_scalars(const std::vector<Scalar>& xs, std::string_view sep = ",");

} // namespace seqspace::detail
