#pragma once

#include "seqspace/scalar.hpp"
#include "seqspace/sequence.hpp"
#include "seqspace/space.hpp"
#include "seqspace/verdict.hpp"

#include <cstdint>
#include <optional>
#include <utility>

namespace seqspace {

struct BasisVector {
    SpaceId space;
    std::int64_t index;
    Seq realization;
};

/// Exact norm. Throws NotSummable when the value has no closed form here,
/// NotNormable when x is not in the space.
Scalar norm(SpaceId space, const Seq& x);

/// Membership decided analytically for families, exactly for finite support.
Verdict member(SpaceId space, const Seq& x, std::int64_t probe);

/// Inverse image of e^(k) under the transform of int_bv (Gamma) or d_bv (Sigma).
BasisVector basis_vector(SpaceId space, std::int64_t k);

/// Coordinates of x against the basis: the transform of x, indices 1..n_max.
Seq expansion_coefficients(SpaceId space, const Seq& x, std::int64_t n_max);

/// sum_{k > n} |(Tx)_k| where T is the isometry onto l1 (Gamma, Sigma, or
/// k x_k, x_k / k for the l1 spaces). Equals the norm distance from x to the
/// n-term basis expansion.
Scalar ak_defect(SpaceId space, const Seq& x, std::int64_t n);

/// ||x - x^[n]|| in the space.
Scalar section_defect(SpaceId space, const Seq& x, std::int64_t n);

/// x - x^[n]: the first n terms zeroed.
Seq tail_part(const Seq& x, std::int64_t n);

// Undecorated building blocks, shared with the duality and matrix modules.
Scalar base_norm(BaseSpace base, const Seq& z);
Verdict base_member(BaseSpace base, const Seq& z, std::int64_t probe);

// (inf, sup) of S_n = sum_{k<=n} z_k over n >= 0 with S_0 = 0. nullopt when
// unbounded or without closed form.
std::optional<std::pair<Scalar, Scalar>> partial_sum_range(const Seq& z);

} // namespace seqspace
