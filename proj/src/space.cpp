#include "seqspace/space.hpp"

#include "parse_util.hpp"

#include <array>
#include <utility>

namespace seqspace {

namespace {

constexpr std::array<std::pair<std::string_view, BaseSpace>, 8> base_names{{
    {"l1", BaseSpace::L1},
    {"linf", BaseSpace::Linf},
    {"c", BaseSpace::C},
    {"c0", BaseSpace::C0},
    {"bv", BaseSpace::BV},
    {"bs", BaseSpace::BS},
    {"cs", BaseSpace::CS},
    {"c0s", BaseSpace::C0S},
}};

constexpr std::string_view space_grammar = "[int_|d_](l1|linf|c|c0|bv|bs|cs|c0s)";

} // namespace

SpaceId parse_space(std::string_view text) {
    std::string_view s = detail::trim(text);
    SpaceId id;
    if (detail::consume(s, "int_")) id.decoration = Decoration::Integrated;
    else if (detail::consume(s, "d_")) id.decoration = Decoration::Differentiated;
    for (auto [name, base] : base_names) {
        if (s == name) {
            id.base = base;
            return id;
        }
    }
    detail::parse_fail(text, space_grammar);
}

std::string_view to_string(BaseSpace b) {
    for (auto [name, base] : base_names)
        if (base == b) return name;
    return "?";
}

std::string to_string(const SpaceId& s) {
    std::string prefix;
    if (s.decoration == Decoration::Integrated) prefix = "int_";
    else if (s.decoration == Decoration::Differentiated) prefix = "d_";
    return prefix + std::string(to_string(s.base));
}

} // namespace seqspace
