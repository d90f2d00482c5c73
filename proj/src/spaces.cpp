#include "seqspace/spaces.hpp"

#include "series.hpp"
#include "seqspace/error.hpp"
#include "seqspace/triangle.hpp"

#include <algorithm>
#include <optional>
#include <string>

namespace seqspace {

namespace {

Seq normalized(const Seq& z) {
    if (!z.is_finite() && z.family()->is_zero()) return Seq::finite(z.values());
    return z;
}

std::int64_t support(const Seq& z) { return static_cast<std::int64_t>(z.support_bound()); }

[[noreturn]] void not_normable(BaseSpace b, const std::string& why) {
    throw Error(ErrorCode::NotNormable, "sequence is not in " + std::string(to_string(b)) + ": " + why);
}

[[noreturn]] void not_summable(BaseSpace b, const std::string& why) {
    throw Error(ErrorCode::NotSummable, "no closed-form " + std::string(to_string(b)) + " norm: " + why);
}

std::string describe(const Family& f) {
    std::string s = to_string(f.coeff) + "*k^" + std::to_string(f.power);
    if (f.ratio != 1) s += "*(" + to_string(f.ratio) + ")^k";
    return s;
}

// Reason a nonzero family fails to lie in `b`; nullopt when it does lie there.
// The sum condition of c0s is handled separately.
std::optional<std::string> family_failure(BaseSpace b, const Family& f) {
    Scalar a = absolute(f.ratio);
    std::int64_t q = f.power;
    if (a > 1) return "terms grow geometrically (|r| > 1)";
    if (a < 1) return std::nullopt;
    bool plus = f.ratio == 1;
    switch (b) {
    case BaseSpace::L1:
        if (q <= -2) return std::nullopt;
        return "sum of |c| k^" + std::to_string(q) + " diverges (exponent >= -1)";
    case BaseSpace::Linf:
        if (q <= 0) return std::nullopt;
        return "|terms| = |c| k^" + std::to_string(q) + " are unbounded";
    case BaseSpace::C0:
    case BaseSpace::C:
        if (q < 0) return std::nullopt;
        if (q > 0) return "|terms| = |c| k^" + std::to_string(q) + " are unbounded";
        if (b == BaseSpace::C && plus) return std::nullopt;
        return plus ? std::string("terms stay at c != 0") : std::string("terms oscillate between c and -c");
    case BaseSpace::BV:
        if (plus && q <= 0) return std::nullopt;
        if (!plus && q <= -2) return std::nullopt;
        if (plus) return "terms c k^" + std::to_string(q) + " are unbounded";
        return "differences |z_k - z_{k-1}| ~ 2|c| k^" + std::to_string(q) + " are not summable";
    case BaseSpace::CS:
    case BaseSpace::C0S:
    case BaseSpace::BS:
        if (plus && q <= -2) return std::nullopt;
        if (!plus && q <= -1) return std::nullopt;
        if (!plus && q == 0 && b == BaseSpace::BS) return std::nullopt;
        if (plus) return "partial sums of c k^" + std::to_string(q) + " grow without bound";
        if (q == 0) return "partial sums oscillate and do not converge";
        return "terms do not tend to zero, partial sums unbounded";
    }
    return std::nullopt;
}

Scalar diff_abs(const Seq& z, std::int64_t k) {
    Scalar prev = k > 1 ? z.term(k - 1) : Scalar(0);
    return absolute(z.term(k) - prev);
}

Scalar l1_tail(const Seq& z, std::int64_t n) {
    std::int64_t m = support(z);
    Scalar acc(0);
    if (z.is_finite()) {
        for (std::int64_t k = n + 1; k <= m; ++k) acc += absolute(z.term(k));
        return acc;
    }
    const Family& f = *z.family();
    if (auto why = family_failure(BaseSpace::L1, f)) not_normable(BaseSpace::L1, *why);
    if (absolute(f.ratio) == 1 || f.power < 0) not_summable(BaseSpace::L1, describe(f));
    std::int64_t e = std::max(n, m);
    for (std::int64_t k = n + 1; k <= e; ++k) acc += absolute(z.term(k));
    return acc + detail::family_abs_tail_sum(f, e + 1);
}

Scalar sup_norm(BaseSpace b, const Seq& z) {
    Scalar best(0);
    for (const Scalar& v : z.values()) best = std::max(best, absolute(v));
    if (z.is_finite()) return best;
    const Family& f = *z.family();
    if (auto why = family_failure(b, f)) not_normable(b, *why);
    std::int64_t peak = detail::magnitude_peak(f, support(z) + 1);
    return std::max(best, absolute(f.term(peak)));
}

// First k >= 2 with r k^q < (k-1)^q; the predicate is monotone in k.
std::int64_t difference_sign_stable(const Family& f) {
    auto stable = [&](std::int64_t k) { return f.ratio * power_of_index(k, f.power) < power_of_index(k - 1, f.power); };
    if (stable(2)) return 2;
    std::int64_t lo = 2;
    std::int64_t hi = 4;
    while (!stable(hi)) {
        lo = hi;
        hi *= 2;
        if (hi > 4'000'000'000LL) throw Error(ErrorCode::NotSummable, "difference sign search out of range");
    }
    while (hi - lo > 1) {
        std::int64_t mid = lo + (hi - lo) / 2;
        if (stable(mid)) hi = mid;
        else lo = mid;
    }
    return hi;
}

Scalar bv_tail(const Seq& z, std::int64_t n) {
    std::int64_t m = support(z);
    Scalar acc(0);
    if (z.is_finite()) {
        for (std::int64_t k = n + 1; k <= m + 1; ++k) acc += diff_abs(z, k);
        return acc;
    }
    const Family& f = *z.family();
    if (auto why = family_failure(BaseSpace::BV, f)) not_normable(BaseSpace::BV, *why);
    Scalar a = absolute(f.ratio);
    if (f.ratio == 1) {
        // Monotone terms tending to zero (q < 0) or constant (q = 0): the tail telescopes.
        std::int64_t e = std::max(n, m + 1);
        for (std::int64_t k = n + 1; k <= e; ++k) acc += diff_abs(z, k);
        if (f.power < 0) acc += absolute(f.term(e));
        return acc;
    }
    if (a == 1 || f.power < 0) not_summable(BaseSpace::BV, describe(f));
    std::int64_t e = std::max({n, m + 1, difference_sign_stable(f) - 1});
    for (std::int64_t k = n + 1; k <= e; ++k) acc += diff_abs(z, k);
    // For k > e: |z_k - z_{k-1}| = |c| a^{k-1} ((k-1)^q - r k^q).
    Scalar s1 = detail::power_tails(a, f.power, e).back();
    Scalar s2 = detail::power_tails(a, f.power, e + 1).back();
    return acc + absolute(f.coeff) * (s1 - f.ratio / a * s2);
}

Scalar finite_partial_sup(const Seq& z, std::int64_t upto, Scalar& last) {
    Scalar best(0);
    last = 0;
    for (std::int64_t k = 1; k <= upto; ++k) {
        last += z.term(k);
        best = std::max(best, absolute(last));
    }
    return best;
}

// sum of all terms, when it has a closed form.
std::optional<Scalar> total_sum(const Seq& z) {
    Scalar s(0);
    for (const Scalar& v : z.values()) s += v;
    if (z.is_finite()) return s;
    const Family& f = *z.family();
    if (absolute(f.ratio) >= 1 || f.power < 0) return std::nullopt;
    return s + detail::family_tail_sum(f, support(z) + 1);
}

Scalar partial_sum_sup(BaseSpace b, const Seq& z) {
    std::int64_t m = support(z);
    Scalar last;
    if (z.is_finite()) return finite_partial_sup(z, m, last);
    const Family& f = *z.family();
    if (auto why = family_failure(b, f)) not_normable(b, *why);
    if (f.ratio < 0) {
        // Alternating terms with nonincreasing modulus from `peak` on: every later
        // partial sum lies between S_{peak-1} and S_peak.
        std::int64_t peak = detail::magnitude_peak(f, m + 1);
        return finite_partial_sup(z, peak, last);
    }
    auto total = total_sum(z);
    if (!total) not_summable(b, describe(f));
    // Terms of one sign beyond m: partial sums move monotonically from S_m to the total.
    return std::max(finite_partial_sup(z, m, last), absolute(*total));
}

Scalar trace_quantity_step(BaseSpace b, const Seq& z, std::int64_t k, Scalar& running) {
    switch (b) {
    case BaseSpace::L1: running += absolute(z.term(k)); return running;
    case BaseSpace::Linf:
    case BaseSpace::C:
    case BaseSpace::C0: return absolute(z.term(k));
    case BaseSpace::BV: running += diff_abs(z, k); return running;
    default: running += z.term(k); return running;
    }
}

std::vector<TracePoint> base_trace(BaseSpace b, const Seq& z, std::int64_t probe) {
    std::vector<TracePoint> out;
    auto marks = trace_indices(probe);
    std::size_t next = 0;
    Scalar running(0);
    for (std::int64_t k = 1; k <= probe && next < marks.size(); ++k) {
        Scalar q = trace_quantity_step(b, z, k, running);
        if (k == marks[next]) {
            out.push_back({k, q});
            ++next;
        }
    }
    return out;
}

std::string_view trace_label(BaseSpace b) {
    switch (b) {
    case BaseSpace::L1: return "sum_{k<=n} |z_k|";
    case BaseSpace::Linf:
    case BaseSpace::C:
    case BaseSpace::C0: return "|z_n|";
    case BaseSpace::BV: return "sum_{k<=n} |z_k - z_{k-1}|";
    default: return "S_n = sum_{k<=n} z_k";
    }
}

void check_c0s_sum(const Seq& z) {
    auto total = total_sum(z);
    if (!total) not_summable(BaseSpace::C0S, "sum of the series has no closed form");
    if (*total != 0) not_normable(BaseSpace::C0S, "partial sums tend to " + to_string(*total) + " != 0");
}

} // namespace

Scalar base_norm(BaseSpace base, const Seq& input) {
    Seq z = normalized(input);
    switch (base) {
    case BaseSpace::L1: return l1_tail(z, 0);
    case BaseSpace::Linf:
    case BaseSpace::C:
    case BaseSpace::C0: return sup_norm(base, z);
    case BaseSpace::BV: return bv_tail(z, 0);
    case BaseSpace::BS:
    case BaseSpace::CS: return partial_sum_sup(base, z);
    case BaseSpace::C0S:
        if (!z.is_finite())
            if (auto why = family_failure(base, *z.family())) not_normable(base, *why);
        check_c0s_sum(z);
        return partial_sum_sup(base, z);
    }
    throw Error(ErrorCode::NotNormable, "unknown space");
}

Verdict base_member(BaseSpace base, const Seq& input, std::int64_t probe) {
    if (probe < 1) throw Error(ErrorCode::Unsupported, "probe must be >= 1");
    Seq z = normalized(input);
    std::string rule(to_string(base));
    auto with_trace = [&](Verdict v) {
        v.trace = base_trace(base, z, probe);
        v.certificate += "; trace of " + std::string(trace_label(base));
        return v;
    };
    auto with_value = [&](std::string cert) {
        try {
            return Verdict::member(rule, base_norm(base, z), std::move(cert));
        } catch (const Error& e) {
            if (e.code() != ErrorCode::NotSummable) throw;
            return Verdict::member(rule, std::nullopt, std::move(cert) + "; norm has no closed form");
        }
    };

    if (z.is_finite()) {
        if (base == BaseSpace::C0S) {
            Scalar total = *total_sum(z);
            if (total != 0)
                return with_trace(Verdict::non_member(
                    rule, "finite support " + std::to_string(support(z)) + ": partial sums settle at " +
                              to_string(total) + " != 0"));
        }
        return with_value("finite support " + std::to_string(support(z)) + ": exact norm");
    }

    const Family& f = *z.family();
    std::string shape = "tail " + describe(f) + " beyond index " + std::to_string(support(z));
    if (auto why = family_failure(base, f)) return with_trace(Verdict::non_member(rule, shape + ": " + *why));
    if (base != BaseSpace::C0S) return with_value(shape + ": analytic tail classification");

    if (auto total = total_sum(z)) {
        if (*total == 0) return with_value(shape + ": series converges with exact sum 0");
        return with_trace(Verdict::non_member(rule, shape + ": series converges to " + to_string(*total) + " != 0"));
    }
    if (support(z) == 0)
        return with_trace(Verdict::non_member(
            rule, shape + ": series converges to a nonzero sum (terms of one sign, or alternating with "
                          "decreasing modulus)"));
    return with_trace(Verdict::inconclusive(rule, shape + ": limit of partial sums has no closed form"));
}

std::optional<std::pair<Scalar, Scalar>> partial_sum_range(const Seq& input) {
    Seq z = normalized(input);
    std::int64_t upto = support(z);
    std::optional<Scalar> limit;
    if (!z.is_finite()) {
        const Family& f = *z.family();
        if (family_failure(BaseSpace::BS, f)) return std::nullopt;
        if (f.ratio < 0) {
            upto = detail::magnitude_peak(f, upto + 1);
        } else {
            limit = total_sum(z);
            if (!limit) return std::nullopt;
        }
    }
    Scalar lo(0), hi(0), s(0);
    for (std::int64_t k = 1; k <= upto; ++k) {
        s += z.term(k);
        lo = std::min(lo, s);
        hi = std::max(hi, s);
    }
    if (limit) {
        lo = std::min(lo, *limit);
        hi = std::max(hi, *limit);
    }
    return std::make_pair(lo, hi);
}

Scalar norm(SpaceId space, const Seq& x) { return base_norm(space.base, decorate(x, space.decoration)); }

Verdict member(SpaceId space, const Seq& x, std::int64_t probe) {
    Verdict v = base_member(space.base, decorate(x, space.decoration), probe);
    v.rule = to_string(space);
    if (space.decoration == Decoration::Integrated) v.certificate = "z_k = k x_k; " + v.certificate;
    if (space.decoration == Decoration::Differentiated) v.certificate = "z_k = x_k / k; " + v.certificate;
    return v;
}

BasisVector basis_vector(SpaceId space, std::int64_t k) {
    if (k < 1) throw Error(ErrorCode::Unsupported, "basis index must be >= 1");
    std::vector<Scalar> zeros(static_cast<std::size_t>(k - 1), Scalar(0));
    if (space == int_bv) return {space, k, Seq::power_law(Scalar(1), -1).with_prefix(zeros)};
    if (space == d_bv) return {space, k, Seq::power_law(Scalar(1), 1).with_prefix(zeros)};
    throw Error(ErrorCode::Unsupported, "basis vectors exist here only for int_bv and d_bv");
}

Seq expansion_coefficients(SpaceId space, const Seq& x, std::int64_t n_max) {
    if (space == int_bv) return gamma_transform(x, n_max);
    if (space == d_bv) return sigma_transform(x, n_max);
    throw Error(ErrorCode::Unsupported, "expansion coefficients exist here only for int_bv and d_bv");
}

Scalar ak_defect(SpaceId space, const Seq& x, std::int64_t n) {
    if (n < 0) throw Error(ErrorCode::Unsupported, "section index must be >= 0");
    Seq z = normalized(decorate(x, space.decoration));
    if (space == int_bv || space == d_bv) return bv_tail(z, n);
    if (space == int_l1 || space == d_l1) return l1_tail(z, n);
    throw Error(ErrorCode::Unsupported, "ak_defect is defined for int_bv, d_bv, int_l1, d_l1");
}

Scalar section_defect(SpaceId space, const Seq& x, std::int64_t n) { return norm(space, tail_part(x, n)); }

Seq tail_part(const Seq& x, std::int64_t n) {
    if (n <= 0) return x;
    std::vector<Scalar> zeros(static_cast<std::size_t>(n), Scalar(0));
    if (x.is_finite() && static_cast<std::int64_t>(x.support_bound()) <= n) return Seq::finite({});
    return x.with_prefix(std::move(zeros));
}

} // namespace seqspace
