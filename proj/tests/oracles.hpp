#pragma once
// Independent reference computations for tests. Nothing here calls the
// algorithms under test; inputs are plain vectors of rationals.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <vector>

namespace oracle {

using Q = mpq_class;
using Vec = std::vector<Q>;
using Dense = std::vector<std::vector<Q>>;  // row-major, 0-based

inline Q abs(const Q& x) { return x < 0 ? Q(-x) : x; }

inline Q at(const Vec& x, std::int64_t k) {  // 1-based, 0 outside
    return k >= 1 && k <= static_cast<std::int64_t>(x.size()) ? x[static_cast<std::size_t>(k - 1)] : Q(0);
}

// xorshift64*, deliberately unlike the library's generator.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : s_(seed ? seed : 0x2545f4914f6cdd1dULL) {}
    std::uint64_t next() {
        s_ ^= s_ >> 12;
        s_ ^= s_ << 25;
        s_ ^= s_ >> 27;
        return s_ * 0x2545f4914f6cdd1dULL;
    }
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    Q rational(std::int64_t bound = 1000) {
        Q q(range(-bound, bound), range(1, bound));
        q.canonicalize();
        return q;
    }
    // Length in [1, max_len], last entry nonzero.
    Vec finite(std::int64_t max_len = 64, std::int64_t bound = 1000) {
        Vec v(static_cast<std::size_t>(range(1, max_len)));
        for (auto& x : v) x = range(0, 3) == 0 ? Q(0) : rational(bound);
        while (v.back() == 0) v.back() = rational(bound);
        return v;
    }

private:
    std::uint64_t s_;
};

// (Gamma x)_n from its definition: Delta applied to k x_k.
inline Vec gamma(const Vec& x, std::int64_t n_max) {
    Vec y;
    for (std::int64_t n = 1; n <= n_max; ++n) y.push_back(Q(n) * at(x, n) - Q(n - 1) * at(x, n - 1));
    return y;
}

// (Sigma x)_n: Delta applied to x_k / k.
inline Vec sigma(const Vec& x, std::int64_t n_max) {
    Vec y;
    for (std::int64_t n = 1; n <= n_max; ++n) {
        Q prev = n > 1 ? Q(at(x, n - 1) / Q(n - 1)) : Q(0);
        y.push_back(at(x, n) / Q(n) - prev);
    }
    return y;
}

inline Q l1(const Vec& x) {
    Q s(0);
    for (const auto& v : x) s += abs(v);
    return s;
}

// sum_k |z_k - z_{k-1}|, z_0 = 0, for finitely supported z.
inline Q bv(const Vec& z) {
    Q s(0);
    for (std::int64_t k = 1; k <= static_cast<std::int64_t>(z.size()) + 1; ++k) s += abs(at(z, k) - at(z, k - 1));
    return s;
}

inline Vec integrated(const Vec& x) {
    Vec z = x;
    for (std::size_t i = 0; i < z.size(); ++i) z[i] *= Q(static_cast<long>(i + 1));
    return z;
}

inline Vec differentiated(const Vec& x) {
    Vec z = x;
    for (std::size_t i = 0; i < z.size(); ++i) z[i] /= Q(static_cast<long>(i + 1));
    return z;
}

inline Q dense_at(const Dense& a, std::int64_t n, std::int64_t k) {
    if (n < 1 || n > static_cast<std::int64_t>(a.size())) return Q(0);
    return at(a[static_cast<std::size_t>(n - 1)], k);
}

inline std::int64_t width(const Dense& a) {
    std::size_t w = 0;
    for (const auto& r : a) w = std::max(w, r.size());
    return static_cast<std::int64_t>(w);
}

// Derived entries straight from the definitions on a dense block.
inline Q bar(const Dense& a, std::int64_t n, std::int64_t k) {
    Q s(0);
    for (std::int64_t j = k; j <= width(a); ++j) s += dense_at(a, n, j) / Q(j);
    return s;
}
inline Q tilde(const Dense& a, std::int64_t n, std::int64_t k) {
    Q s(0);
    for (std::int64_t j = k; j <= width(a); ++j) s += dense_at(a, n, j) * Q(j);
    return s;
}
inline Q hat(const Dense& a, std::int64_t n, std::int64_t k) {
    return Q(n) * dense_at(a, n, k) - Q(n - 1) * dense_at(a, n - 1, k);
}
inline Q arrow(const Dense& a, std::int64_t n, std::int64_t k) {
    if (n == 1) return dense_at(a, 1, k);
    return dense_at(a, n, k) / Q(n) - dense_at(a, n - 1, k) / Q(n - 1);
}

// sup over finite N, K of |sum_{n in N} sum_{k in K} d_nk| by enumerating
// every column subset K; for fixed K the best N takes rows of one sign.
inline Q fss_brute(const Dense& d) {
    std::int64_t w = width(d);
    Q best(0);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << w); ++mask) {
        Q pos(0), neg(0);
        for (const auto& row : d) {
            Q r(0);
            for (std::int64_t k = 0; k < static_cast<std::int64_t>(row.size()); ++k)
                if ((mask >> k) & 1U) r += row[static_cast<std::size_t>(k)];
            if (r > 0) pos += r;
            else neg -= r;
        }
        best = std::max({best, pos, neg});
    }
    return best;
}

// d_nk = a_nk - a_{n,k+1} over columns 1..w, or a_nk - a_{n,k-1} over 1..w+1.
inline Dense differences(const Dense& a, bool forward) {
    Dense out;
    std::int64_t w = width(a);
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::vector<Q> row;
        auto n = static_cast<std::int64_t>(i + 1);
        std::int64_t end = forward ? w : w + 1;
        for (std::int64_t k = 1; k <= end; ++k)
            row.push_back(forward ? Q(dense_at(a, n, k) - dense_at(a, n, k + 1))
                                  : Q(dense_at(a, n, k) - dense_at(a, n, k - 1)));
        out.push_back(std::move(row));
    }
    return out;
}

} // namespace oracle
