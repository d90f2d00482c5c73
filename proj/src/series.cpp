#include "series.hpp"

#include "seqspace/error.hpp"

namespace seqspace::detail {

std::vector<Scalar> power_tails(const Scalar& s, std::int64_t J, std::int64_t K) {
    if (absolute(s) >= 1) throw Error(ErrorCode::NotSummable, "power tail needs |s| < 1");
    // (1 - s) S_j = K^j s^K - sum_{i<j} C(j,i) (-1)^{j-i} (S_i - K^i s^K)
    Scalar sK = power(s, K);
    Scalar inv = 1 / (1 - s);
    std::vector<Scalar> out;
    std::vector<Scalar> head;  // K^i s^K
    for (std::int64_t j = 0; j <= J; ++j) {
        head.push_back(power_of_index(K, j) * sK);
        Scalar acc = head[static_cast<std::size_t>(j)];
        for (std::int64_t i = 0; i < j; ++i) {
            Scalar term = binomial(j, i) * (out[static_cast<std::size_t>(i)] - head[static_cast<std::size_t>(i)]);
            if ((j - i) % 2 == 0) acc -= term;
            else acc += term;
        }
        out.push_back(acc * inv);
    }
    return out;
}

Scalar family_tail_sum(const Family& f, std::int64_t K) {
    if (f.is_zero()) return Scalar(0);
    if (f.power < 0) throw Error(ErrorCode::NotSummable, "no closed form for negative powers");
    return f.coeff * power_tails(f.ratio, f.power, K).back();
}

Scalar family_abs_tail_sum(const Family& f, std::int64_t K) {
    if (f.is_zero()) return Scalar(0);
    if (f.power < 0) throw Error(ErrorCode::NotSummable, "no closed form for negative powers");
    return absolute(f.coeff) * power_tails(absolute(f.ratio), f.power, K).back();
}

std::int64_t magnitude_peak(const Family& f, std::int64_t from) {
    if (f.is_zero() || f.power <= 0) return from;
    Scalar a = absolute(f.ratio);
    if (a >= 1) throw Error(ErrorCode::NotSummable, "magnitudes grow without bound");
    // |f_{k+1}|/|f_k| = a ((k+1)/k)^q decreases in k; find the first k where it is <= 1.
    auto grows = [&](std::int64_t k) {
        return a * power(Scalar(static_cast<long>(k + 1)) / Scalar(static_cast<long>(k)), f.power) > 1;
    };
    if (!grows(from)) return from;
    std::int64_t lo = from;  // grows(lo)
    std::int64_t hi = from + 1;
    while (grows(hi)) {
        lo = hi;
        hi = from + 2 * (hi - from);
        if (hi > 4'000'000'000LL) throw Error(ErrorCode::NotSummable, "magnitude peak beyond search range");
    }
    while (hi - lo > 1) {
        std::int64_t mid = lo + (hi - lo) / 2;
        if (grows(mid)) lo = mid;
        else hi = mid;
    }
    return hi;
}

} // namespace seqspace::detail
