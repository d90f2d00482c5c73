#pragma once

#include "seqspace/scalar.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace seqspace::detail {

struct SparseRow {
    std::vector<std::pair<std::int64_t, Scalar>> entries;  // (column, value), columns increasing, nonzero
};

// sup over finite row sets N and column sets K of |sum_{n in N} sum_{k in K} d_nk|.
// For a fixed K the best N takes the rows of one sign, so only K is searched,
// by a dynamic programme over columns whose state is the membership of the
// last `width` columns plus column 1. nullopt when some row, ignoring column
// 1, spans more than max_width columns.
std::optional<Scalar> finite_subset_sup(const std::vector<SparseRow>& rows, int max_width = 12);

// sum of |d_nk|, an upper bound for the quantity above.
Scalar total_abs(const std::vector<SparseRow>& rows);

} // namespace seqspace::detail
