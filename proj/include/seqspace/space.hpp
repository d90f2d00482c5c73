#pragma once

#include "seqspace/sequence.hpp"

#include <string>
#include <string_view>

namespace seqspace {

enum class BaseSpace { L1, Linf, C, C0, BV, BS, CS, C0S };

struct SpaceId {
    BaseSpace base{BaseSpace::L1};
    Decoration decoration{Decoration::None};

    friend bool operator==(const SpaceId&, const SpaceId&) = default;
};

inline constexpr SpaceId int_bv{BaseSpace::BV, Decoration::Integrated};
inline constexpr SpaceId d_bv{BaseSpace::BV, Decoration::Differentiated};
inline constexpr SpaceId int_l1{BaseSpace::L1, Decoration::Integrated};
inline constexpr SpaceId d_l1{BaseSpace::L1, Decoration::Differentiated};

inline constexpr SpaceId plain(BaseSpace b) { return SpaceId{b, Decoration::None}; }

// l1 linf c c0 bv bs cs c0s, with optional int_ / d_ prefix.
SpaceId parse_space(std::string_view text);
std::string to_string(const SpaceId& s);
std::string_view to_string(BaseSpace b);

} // namespace seqspace
