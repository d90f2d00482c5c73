#pragma once

#include "seqspace/scalar.hpp"
#include "seqspace/sequence.hpp"
#include "seqspace/space.hpp"
#include "seqspace/triangle.hpp"
#include "seqspace/verdict.hpp"

#include <cstdint>
#include <string>
#include <string_view>

namespace seqspace {

enum class DualKind { Alpha, Beta, Gamma };

DualKind parse_dual_kind(std::string_view text);  // alpha | beta | gamma
std::string_view to_string(DualKind k);

// l1, cs, bs: the space that the products (a_k x_k) must land in.
BaseSpace multiplier_target(DualKind k);

enum class AssociatedStyle { C, D, E, EPrime };

std::string_view to_string(AssociatedStyle s);

/// The triangle that turns the dual question into a matrix-class question
/// after substituting x = T^{-1} y.
struct AssociatedMatrix {
    Seq source;
    AssociatedStyle style;
    TriangleOp realized;
    Seq column_generator;  // u with entries u_n (C/D: a_n/n, n a_n) or partial-sum terms (E/E')
};

AssociatedMatrix associated_matrix(SpaceId space, DualKind kind, const Seq& a);

// Alpha: sum_{k<=n} |a_k x_k|; Beta: sum_{k<=n} a_k x_k; Gamma: max_{m<=n} |sum_{k<=m} a_k x_k|.
Scalar pairing_partial(const Seq& a, const Seq& x, DualKind kind, std::int64_t n);

/// Identified dual space of int_bv or d_bv.
SpaceId dual_space(SpaceId space, DualKind kind);

Verdict dual_member(SpaceId space, DualKind kind, const Seq& a, std::int64_t probe);
Verdict dual_member_via_matrix(SpaceId space, DualKind kind, const Seq& a, std::int64_t probe);

/// The fixed witness x of the space with ||x|| = 1 whose pairing diverges
/// exactly when a is outside the dual: (1/k) for int_bv, (k) for d_bv.
Seq pairing_witness(SpaceId space);

/// U D_alpha U^{-1}, with U^{-1} cross-checked on the leading n_max block.
TriangleOp build_multiplier_matrix(const TriangleOp& u, const Seq& alpha, std::int64_t n_max);

} // namespace seqspace
