#pragma once

#include "seqspace/scalar.hpp"
#include "seqspace/sequence.hpp"

#include <cstdint>
#include <vector>

namespace seqspace::detail {

// out[j] = sum_{k >= K} k^j s^k for j = 0..J. Requires |s| < 1, K >= 1.
std::vector<Scalar> power_tails(const Scalar& s, std::int64_t J, std::int64_t K);

// sum_{k >= K} c k^q r^k. Requires |r| < 1 and q >= 0.
Scalar family_tail_sum(const Family& f, std::int64_t K);

// sum_{k >= K} |c| k^q |r|^k. Same requirements.
Scalar family_abs_tail_sum(const Family& f, std::int64_t K);

// Smallest k >= from with |f_{k+1}| <= |f_k|; afterwards |f_k| never grows.
// Requires |r| < 1, or |r| = 1 with q <= 0.
std::int64_t magnitude_peak(const Family& f, std::int64_t from);

} // namespace seqspace::detail
