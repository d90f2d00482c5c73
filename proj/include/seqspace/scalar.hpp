#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace seqspace {

// Exact rational scalar. mpq_class keeps values canonical after every
// arithmetic operation; construct through make_scalar/parse_scalar so that
// literals are canonical too.
using Scalar = mpq_class;

Scalar make_scalar(std::int64_t num, std::int64_t den = 1);

// Accepts `p` or `p/q` with an optional sign; q must be nonzero.
Scalar parse_scalar(std::string_view text);

// `p/q` in lowest terms, `p` when q == 1.
std::string to_string(const Scalar& x);

Scalar absolute(const Scalar& x);
Scalar power(const Scalar& base, std::int64_t exponent);
Scalar power_of_index(std::int64_t k, std::int64_t exponent);  // k^exponent

inline int sign(const Scalar& x) { return sgn(x); }

Scalar binomial(std::int64_t n, std::int64_t k);

// Smallest integer >= x.
std::int64_t ceil_to_int(const Scalar& x);

} // namespace seqspace
