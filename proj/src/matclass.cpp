#include "seqspace/matclass.hpp"

#include "fss.hpp"
#include "parse_util.hpp"
#include "seqspace/duality.hpp"
#include "seqspace/error.hpp"
#include "seqspace/spaces.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace seqspace {

std::string_view to_string(Condition c) {
    switch (c) {
    case Condition::SupEntry: return "SupEntry";
    case Condition::ColumnLimits: return "ColumnLimits";
    case Condition::ColumnLimitsZero: return "ColumnLimitsZero";
    case Condition::SupColumnSum: return "SupColumnSum";
    case Condition::SupPartialColumnSum: return "SupPartialColumnSum";
    case Condition::ColumnSeriesConverge: return "ColumnSeriesConverge";
    case Condition::ColumnSeriesZero: return "ColumnSeriesZero";
    case Condition::FiniteSubsetSupForward: return "FiniteSubsetSupForward";
    case Condition::FiniteSubsetSupBackward: return "FiniteSubsetSupBackward";
    case Condition::EntryRowLimitZero: return "EntryRowLimitZero";
    }
    return "?";
}

std::string_view formula(Condition c) {
    switch (c) {
    case Condition::SupEntry: return "sup_{n,k} |a_nk| < inf";
    case Condition::ColumnLimits: return "lim_n a_nk exists for each k";
    case Condition::ColumnLimitsZero: return "lim_n a_nk = 0 for each k";
    case Condition::SupColumnSum: return "sup_k sum_n |a_nk| < inf";
    case Condition::SupPartialColumnSum: return "sup_{k,m} |sum_{n<=m} a_nk| < inf";
    case Condition::ColumnSeriesConverge: return "sum_n a_nk converges for each k";
    case Condition::ColumnSeriesZero: return "sum_n a_nk = 0 for each k";
    case Condition::FiniteSubsetSupForward: return "sup_{N,K finite} |sum_{n in N} sum_{k in K} (a_nk - a_{n,k+1})| < inf";
    case Condition::FiniteSubsetSupBackward:
        return "sup_{N,K finite} |sum_{n in N} sum_{k in K} (a_nk - a_{n,k-1})| < inf, a_{n,0} = 0";
    case Condition::EntryRowLimitZero: return "lim_k a_nk = 0 for each n";
    }
    return "?";
}

std::vector<Condition> class_conditions(BaseSpace from, BaseSpace to) {
    using C = Condition;
    if (from == BaseSpace::L1) {
        switch (to) {
        case BaseSpace::Linf: return {C::SupEntry};
        case BaseSpace::C: return {C::SupEntry, C::ColumnLimits};
        case BaseSpace::C0: return {C::SupEntry, C::ColumnLimitsZero};
        case BaseSpace::L1: return {C::SupColumnSum};
        case BaseSpace::BS: return {C::SupPartialColumnSum};
        case BaseSpace::CS: return {C::SupPartialColumnSum, C::ColumnSeriesConverge};
        case BaseSpace::C0S: return {C::SupPartialColumnSum, C::ColumnSeriesZero};
        default: break;
        }
    }
    if (to == BaseSpace::L1) {
        switch (from) {
        case BaseSpace::Linf:
        case BaseSpace::C:
        case BaseSpace::C0: return {C::FiniteSubsetSupForward};
        case BaseSpace::BS: return {C::EntryRowLimitZero, C::FiniteSubsetSupForward};
        case BaseSpace::CS: return {C::FiniteSubsetSupBackward};
        case BaseSpace::C0S: return {C::FiniteSubsetSupForward};
        default: break;
        }
    }
    throw Error(ErrorCode::Unsupported, "no characterisation implemented for (" + std::string(to_string(from)) + ":" +
                                            std::string(to_string(to)) + ")");
}

namespace {

Scalar at(const Block& rows, std::int64_t n, std::int64_t k) {
    if (n < 1 || n > static_cast<std::int64_t>(rows.size()) || k < 1) return Scalar(0);
    const auto& r = rows[static_cast<std::size_t>(n - 1)];
    return k <= static_cast<std::int64_t>(r.size()) ? r[static_cast<std::size_t>(k - 1)] : Scalar(0);
}

std::int64_t width_of(const Block& rows, std::size_t count) {
    std::int64_t w = 0;
    for (std::size_t i = 0; i < count && i < rows.size(); ++i) w = std::max(w, static_cast<std::int64_t>(rows[i].size()));
    return w;
}

detail::SparseRow differenced(const std::vector<Scalar>& row, bool forward) {
    detail::SparseRow out;
    auto len = static_cast<std::int64_t>(row.size());
    auto get = [&](std::int64_t k) {
        return k >= 1 && k <= len ? row[static_cast<std::size_t>(k - 1)] : Scalar(0);
    };
    std::int64_t end = forward ? len : len + 1;
    for (std::int64_t k = 1; k <= end; ++k) {
        Scalar d = forward ? Scalar(get(k) - get(k + 1)) : Scalar(get(k) - get(k - 1));
        if (d != 0) out.entries.emplace_back(k, d);
    }
    return out;
}

std::vector<detail::SparseRow> differenced_rows(const Block& rows, std::size_t count, bool forward) {
    std::vector<detail::SparseRow> out;
    for (std::size_t i = 0; i < count && i < rows.size(); ++i) out.push_back(differenced(rows[i], forward));
    return out;
}

// The quantity behind each condition on the leading `count` rows of a block.
std::optional<Scalar> block_quantity(const Block& rows, std::size_t count, Condition c) {
    count = std::min(count, rows.size());
    auto n_max = static_cast<std::int64_t>(count);
    std::int64_t cols = width_of(rows, count);
    Scalar best(0);
    switch (c) {
    case Condition::SupEntry:
        for (std::int64_t n = 1; n <= n_max; ++n)
            for (std::int64_t k = 1; k <= cols; ++k) best = std::max(best, absolute(at(rows, n, k)));
        return best;
    case Condition::ColumnLimits:
        for (std::int64_t k = 1; k <= cols; ++k) best = std::max(best, absolute(at(rows, n_max, k) - at(rows, n_max - 1, k)));
        return best;
    case Condition::ColumnLimitsZero:
        for (std::int64_t k = 1; k <= cols; ++k) best = std::max(best, absolute(at(rows, n_max, k)));
        return best;
    case Condition::SupColumnSum:
        for (std::int64_t k = 1; k <= cols; ++k) {
            Scalar s(0);
            for (std::int64_t n = 1; n <= n_max; ++n) s += absolute(at(rows, n, k));
            best = std::max(best, s);
        }
        return best;
    case Condition::SupPartialColumnSum:
        for (std::int64_t k = 1; k <= cols; ++k) {
            Scalar s(0);
            for (std::int64_t n = 1; n <= n_max; ++n) {
                s += at(rows, n, k);
                best = std::max(best, absolute(s));
            }
        }
        return best;
    case Condition::ColumnSeriesConverge:
    case Condition::ColumnSeriesZero:
        for (std::int64_t k = 1; k <= cols; ++k) {
            Scalar s(0);
            for (std::int64_t n = 1; n <= n_max; ++n) s += at(rows, n, k);
            best = std::max(best, absolute(s));
        }
        return best;
    case Condition::FiniteSubsetSupForward:
    case Condition::FiniteSubsetSupBackward:
        return detail::finite_subset_sup(differenced_rows(rows, count, c == Condition::FiniteSubsetSupForward));
    case Condition::EntryRowLimitZero: return std::nullopt;
    }
    return std::nullopt;
}

// Column-cumulative quantities in one pass over the rows; the rest per prefix.
std::vector<TracePoint> window_trace(const Block& window, Condition c, std::int64_t probe) {
    std::vector<TracePoint> out;
    std::vector<std::int64_t> marks = trace_indices(probe);
    bool cumulative = c == Condition::SupEntry || c == Condition::SupColumnSum || c == Condition::SupPartialColumnSum ||
                      c == Condition::ColumnSeriesConverge || c == Condition::ColumnSeriesZero;
    if (!cumulative) {
        for (std::int64_t n : marks) {
            auto q = block_quantity(window, static_cast<std::size_t>(n), c);
            if (!q) return {};
            out.push_back({n, *q});
        }
        return out;
    }
    std::vector<Scalar> sums;  // per column: sum, or sum of |.|
    Scalar best(0);
    std::size_t next_mark = 0;
    for (std::int64_t n = 1; n <= probe && next_mark < marks.size(); ++n) {
        if (n <= static_cast<std::int64_t>(window.size())) {
            const auto& row = window[static_cast<std::size_t>(n - 1)];
            if (sums.size() < row.size()) sums.resize(row.size(), Scalar(0));
            for (std::size_t k = 0; k < row.size(); ++k) {
                if (row[k] == 0) continue;
                if (c == Condition::SupEntry) {
                    best = std::max(best, absolute(row[k]));
                } else if (c == Condition::SupColumnSum) {
                    sums[k] += absolute(row[k]);
                    best = std::max(best, sums[k]);
                } else {
                    sums[k] += row[k];
                    if (c == Condition::SupPartialColumnSum) best = std::max(best, absolute(sums[k]));
                }
            }
        }
        if (n != marks[next_mark]) continue;
        ++next_mark;
        if (c == Condition::ColumnSeriesConverge || c == Condition::ColumnSeriesZero) {
            best = 0;
            for (const auto& v : sums) best = std::max(best, absolute(v));
        }
        out.push_back({n, best});
    }
    return out;
}

Verdict member_with(Condition c, std::optional<Scalar> value, std::string cert) {
    return Verdict::member(std::string(to_string(c)), std::move(value), std::move(cert));
}

Verdict non_member_with(Condition c, std::string cert) {
    return Verdict::non_member(std::string(to_string(c)), std::move(cert));
}

// ---------------------------------------------------------------- finite blocks

Verdict evaluate_block(const Block& rows, Condition c) {
    std::size_t count = rows.size();
    std::string shape = std::to_string(count) + " nonzero rows";
    switch (c) {
    case Condition::SupEntry:
    case Condition::SupColumnSum:
    case Condition::SupPartialColumnSum:
        return member_with(c, block_quantity(rows, count, c), shape + ": exact supremum over the finite block");
    case Condition::ColumnLimits:
    case Condition::ColumnLimitsZero:
        return member_with(c, Scalar(0), shape + ": every column is eventually 0");
    case Condition::ColumnSeriesConverge:
        return member_with(c, std::nullopt, shape + ": every column series is a finite sum");
    case Condition::ColumnSeriesZero: {
        std::int64_t cols = width_of(rows, count);
        for (std::int64_t k = 1; k <= cols; ++k) {
            Scalar s(0);
            for (std::int64_t n = 1; n <= static_cast<std::int64_t>(count); ++n) s += at(rows, n, k);
            if (s != 0)
                return non_member_with(c, "column " + std::to_string(k) + " sums to " + to_string(s) + " != 0");
        }
        return member_with(c, Scalar(0), shape + ": every column sums to 0");
    }
    case Condition::FiniteSubsetSupForward:
    case Condition::FiniteSubsetSupBackward: {
        auto d = differenced_rows(rows, count, c == Condition::FiniteSubsetSupForward);
        if (auto v = detail::finite_subset_sup(d))
            return member_with(c, *v, shape + ": exact maximum over column subsets (banded dynamic programme)");
        return member_with(c, std::nullopt,
                           shape + ": finitely many nonzero differences, sup <= sum |d_nk| = " +
                               to_string(detail::total_abs(d)));
    }
    case Condition::EntryRowLimitZero:
        return member_with(c, std::nullopt, "every row has finite support");
    }
    return Verdict{};
}

// ---------------------------------------------------------------- band profiles

struct ProfileView {
    const Matrix& m;
    const BandProfile& p;
    std::int64_t b;
    std::int64_t u;
    std::int64_t r0;  // rows >= r0 follow the profile with every offset in range
    std::int64_t k0;  // columns >= k0 meet only profile rows
    std::vector<std::pair<std::int64_t, RationalFunction>> offsets;  // nonzero, o in [-u, b]
    std::optional<RationalFunction> fill;
};

ProfileView make_view(const Matrix& m) {
    const BandProfile& p = *m.profile();
    ProfileView v{m, p, p.lower_width(), p.upper_width(), 0, 0, {}, p.fill};
    std::int64_t pole = 0;
    auto note = [&](const RationalFunction& f) {
        if (f.den().degree() > 0) pole = std::max(pole, ceil_to_int(f.den().root_bound()) + 1);
    };
    for (std::int64_t o = -v.u; o <= v.b; ++o) {
        RationalFunction f = p.at_offset(o);
        if (f.is_zero()) continue;
        note(f);
        v.offsets.emplace_back(o, f);
    }
    if (v.fill) note(*v.fill);
    v.r0 = std::max({p.from_row, v.b + 3, pole + 1});
    std::int64_t explicit_cols = 0;
    for (std::int64_t n = 1; n < v.r0; ++n) explicit_cols = std::max(explicit_cols, m.row_end(n));
    v.k0 = std::max({explicit_cols + 1, v.r0 + v.u, std::int64_t{1}});
    return v;
}

// sum over rows 1..(last row that can touch column k) of a_nk or |a_nk|; only
// meaningful without a fill.
Scalar column_sum(const ProfileView& v, std::int64_t k, bool abs) {
    std::int64_t last = std::max(v.r0 - 1, k + v.b);
    Scalar s(0);
    for (std::int64_t n = 1; n <= last; ++n) {
        Scalar e = v.m.entry(n, k);
        s += abs ? absolute(e) : e;
    }
    return s;
}

std::string offset_label(std::int64_t o) {
    if (o == 0) return "diagonal";
    if (o > 0) return "entries a_{n,n-" + std::to_string(o) + "}";
    return "entries a_{n,n+" + std::to_string(-o) + "}";
}

Verdict profile_sup_entry(const ProfileView& v) {
    Scalar best(0);
    for (std::int64_t n = 1; n < v.r0; ++n)
        for (const Scalar& e : v.m.row(n)) best = std::max(best, absolute(e));
    for (const auto& [o, f] : v.offsets) {
        auto s = sup_abs(f, v.r0);
        if (!s) return non_member_with(Condition::SupEntry, offset_label(o) + " = " + f.to_string() + " are unbounded");
        best = std::max(best, *s);
    }
    if (v.fill) {
        auto s = sup_abs(*v.fill, v.r0);
        if (!s) return non_member_with(Condition::SupEntry, "fill entries " + v.fill->to_string() + " are unbounded");
        best = std::max(best, *s);
    }
    return member_with(Condition::SupEntry, best,
                       "explicit rows below " + std::to_string(v.r0) + " plus exact suprema of each band rule");
}

Verdict profile_column_limits(const ProfileView& v, Condition c) {
    if (!v.fill) return member_with(c, Scalar(0), "banded: every column is eventually 0");
    auto lim = v.fill->limit();
    if (!lim)
        return non_member_with(c, "a_nk = " + v.fill->to_string() + " for n > k + " + std::to_string(v.b) +
                                      ", which is unbounded in n");
    if (c == Condition::ColumnLimitsZero && *lim != 0)
        return non_member_with(c, "every column tends to " + to_string(*lim) + " != 0");
    return member_with(c, *lim, "every column tends to lim_n " + v.fill->to_string() + " = " + to_string(*lim));
}

std::optional<Verdict> fill_not_summable(const ProfileView& v, Condition c) {
    if (!v.fill || v.fill->summable()) return std::nullopt;
    return non_member_with(c, "column 1 holds " + v.fill->to_string() +
                                  " for all large n, of one sign and not summable, so its sums diverge");
}

Verdict profile_sup_column_sum(const ProfileView& v) {
    const Condition c = Condition::SupColumnSum;
    if (auto bad = fill_not_summable(v, c)) return *bad;
    std::int64_t k1 = v.k0;
    RationalFunction total;
    for (const auto& [o, f] : v.offsets) {
        k1 = std::max(k1, f.stable_from() - o);
        RationalFunction g = f.shifted(o);
        total = f.eventual_sign() > 0 ? total + g : total - g;
    }
    Scalar best(0);
    if (!v.fill)
        for (std::int64_t k = 1; k < k1; ++k) best = std::max(best, column_sum(v, k, true));
    auto s = sup_abs(total, k1);
    if (!s)
        return non_member_with(c, "for k >= " + std::to_string(k1) + " column k has abs-sum " + total.to_string('k') +
                                      ", unbounded");
    if (v.fill)
        return member_with(c, std::nullopt,
                           "band part of the column abs-sums is " + total.to_string('k') +
                               " (bounded) and the fill " + v.fill->to_string() + " is summable");
    return member_with(c, std::max(best, *s),
                       "column k abs-sum = " + total.to_string('k') + " for k >= " + std::to_string(k1) +
                           ", earlier columns summed exactly");
}

Verdict profile_sup_partial_column_sum(const ProfileView& v) {
    const Condition c = Condition::SupPartialColumnSum;
    if (auto bad = fill_not_summable(v, c)) return *bad;
    Scalar best(0);
    if (!v.fill) {
        for (std::int64_t k = 1; k < v.k0; ++k) {
            Scalar s(0);
            for (std::int64_t n = 1; n <= std::max(v.r0 - 1, k + v.b); ++n) {
                s += v.m.entry(n, k);
                best = std::max(best, absolute(s));
            }
        }
    }
    RationalFunction running;
    for (const auto& [o, f] : v.offsets) {
        running = running + f.shifted(o);
        auto s = sup_abs(running, v.k0);
        if (!s)
            return non_member_with(c, "partial column sums through offset " + std::to_string(o) + " equal " +
                                          running.to_string('k') + ", unbounded in k");
        best = std::max(best, *s);
    }
    if (v.fill)
        return member_with(c, std::nullopt, "band partial sums bounded and the fill " + v.fill->to_string() +
                                                " is summable");
    return member_with(c, best, "exact: explicit columns below " + std::to_string(v.k0) +
                                    " and suprema of the band partial sums in k");
}

Verdict profile_column_series_converge(const ProfileView& v) {
    const Condition c = Condition::ColumnSeriesConverge;
    if (auto bad = fill_not_summable(v, c)) return *bad;
    if (!v.fill) return member_with(c, std::nullopt, "banded: every column has finitely many nonzero entries");
    return member_with(c, std::nullopt, "column tails are the summable fill " + v.fill->to_string());
}

Verdict profile_column_series_zero(const ProfileView& v) {
    const Condition c = Condition::ColumnSeriesZero;
    if (auto bad = fill_not_summable(v, c)) return *bad;
    RationalFunction band;  // sum of the band entries of column k
    for (const auto& [o, f] : v.offsets) band = band + f.shifted(o);
    if (!v.fill) {
        for (std::int64_t k = 1; k < v.k0; ++k) {
            Scalar s = column_sum(v, k, false);
            if (s != 0) return non_member_with(c, "column " + std::to_string(k) + " sums to " + to_string(s) + " != 0");
        }
        if (!band.is_zero()) {
            std::int64_t k = v.k0;
            while (band.at(k) == 0) ++k;
            return non_member_with(c, "column k sums to " + band.to_string('k') + "; at k = " + std::to_string(k) +
                                          " that is " + to_string(band.at(k)));
        }
        return member_with(c, Scalar(0), "every column sums to 0 (band sum vanishes identically)");
    }
    // T(k) - T(k+1) = B(k) - B(k+1) + W(k+b+1) and T(k) -> lim B.
    RationalFunction step = band - band.shifted(1) + v.fill->shifted(v.b + 1);
    if (!step.is_zero()) {
        std::int64_t k = v.k0;
        while (step.at(k) == 0) ++k;
        return non_member_with(c, "column sums of columns " + std::to_string(k) + " and " + std::to_string(k + 1) +
                                      " differ by " + to_string(step.at(k)));
    }
    auto lim = band.limit();
    if (!lim || *lim != 0)
        return non_member_with(c, "column sums are constant and equal to lim " + band.to_string('k') +
                                      (lim ? " = " + to_string(*lim) : std::string(" (unbounded)")));
    for (std::int64_t j = 1; j < v.k0; ++j) {
        Scalar diff(0);
        for (std::int64_t n = 1; n <= std::max(v.r0 - 1, j + v.b + 1); ++n) diff += v.m.entry(n, j) - v.m.entry(n, j + 1);
        if (diff != 0)
            return non_member_with(c, "column sums of columns " + std::to_string(j) + " and " + std::to_string(j + 1) +
                                          " differ by " + to_string(diff));
    }
    return member_with(c, Scalar(0), "consecutive column sums agree and tend to 0");
}

Verdict profile_fss(const ProfileView& v, Condition c) {
    bool forward = c == Condition::FiniteSubsetSupForward;
    std::vector<std::pair<std::string, RationalFunction>> rules;
    if (forward) {
        for (std::int64_t o = -v.u; o <= v.b + 1; ++o)
            rules.emplace_back(offset_label(o), v.p.at_offset(o) - v.p.at_offset(o - 1));
    } else {
        for (std::int64_t o = -v.u - 1; o <= v.b; ++o)
            rules.emplace_back(offset_label(o), v.p.at_offset(o) - v.p.at_offset(o + 1));
        if (v.fill) rules.emplace_back("column 1", *v.fill);
    }
    bool vanish = true;
    for (const auto& [label, d] : rules) {
        if (d.is_zero()) continue;
        vanish = false;
        if (!d.summable())
            return non_member_with(c, "differences on " + label + " equal " + d.to_string() +
                                          ", not summable; d is banded, so the subset supremum is at least a "
                                          "fixed fraction of sum |d_nk| and diverges");
    }
    std::vector<detail::SparseRow> rows;
    for (std::int64_t n = 1; n < v.r0; ++n) rows.push_back(differenced(v.m.row(n), forward));
    if (vanish) {
        if (auto val = detail::finite_subset_sup(rows))
            return member_with(c, *val, "differences vanish from row " + std::to_string(v.r0) +
                                            " on; exact maximum over the remaining rows");
        return member_with(c, std::nullopt, "differences vanish from row " + std::to_string(v.r0) + " on");
    }
    return member_with(c, std::nullopt,
                       "every band of differences is summable, so sum |d_nk| < inf and the subset supremum is finite");
}

Verdict evaluate_profile(const Matrix& m, Condition c) {
    ProfileView v = make_view(m);
    switch (c) {
    case Condition::SupEntry: return profile_sup_entry(v);
    case Condition::ColumnLimits:
    case Condition::ColumnLimitsZero: return profile_column_limits(v, c);
    case Condition::SupColumnSum: return profile_sup_column_sum(v);
    case Condition::SupPartialColumnSum: return profile_sup_partial_column_sum(v);
    case Condition::ColumnSeriesConverge: return profile_column_series_converge(v);
    case Condition::ColumnSeriesZero: return profile_column_series_zero(v);
    case Condition::FiniteSubsetSupForward:
    case Condition::FiniteSubsetSupBackward: return profile_fss(v, c);
    case Condition::EntryRowLimitZero: return member_with(c, std::nullopt, "every row has finite support");
    }
    return Verdict{};
}

// Built on first use; Member verdicts carry no trace.
class LazyWindow {
public:
    LazyWindow(const Matrix& a, std::int64_t probe) : a_(a), probe_(probe) {}
    const Block& get() {
        if (!block_) block_ = a_.window(probe_);
        return *block_;
    }

private:
    const Matrix& a_;
    std::int64_t probe_;
    std::optional<Block> block_;
};

Verdict evaluate_with_window(const Matrix& a, Condition c, std::int64_t probe, LazyWindow& window) {
    Verdict v;
    if (c == Condition::EntryRowLimitZero) {
        v = member_with(c, std::nullopt, "every row has finite support");
    } else if (a.block()) {
        v = evaluate_block(*a.block(), c);
    } else if (a.profile()) {
        v = evaluate_profile(a, c);
    } else {
        v = Verdict::inconclusive(std::string(to_string(c)),
                                  "no finite block or band structure; trace over the leading " + std::to_string(probe) +
                                      " rows only");
    }
    v.rule = std::string(to_string(c)) + ": " + std::string(formula(c));
    if (v.status != Status::Member) v.trace = window_trace(window.get(), c, probe);
    return v;
}

} // namespace

Verdict evaluate_condition(const Matrix& a, Condition c, std::int64_t probe) {
    if (probe < 1) throw Error(ErrorCode::Unsupported, "probe must be >= 1");
    LazyWindow window(a, probe);
    return evaluate_with_window(a, c, probe, window);
}

namespace {

Verdict evaluate_all(const Matrix& a, const std::vector<Condition>& conds, std::int64_t probe, std::string rule) {
    LazyWindow window(a, probe);
    Verdict v;
    v.rule = std::move(rule);
    for (Condition c : conds) v.checks.push_back({std::string(to_string(c)), evaluate_with_window(a, c, probe, window)});
    v.status = conjunction(v.checks);
    std::string cert;
    for (const auto& [name, sub] : v.checks) {
        if (!cert.empty()) cert += "; ";
        cert += name + " " + std::string(to_string(sub.status));
        if (sub.value) cert += " (" + to_string(*sub.value) + ")";
    }
    v.certificate = cert;
    // first condition that carries a sup
    if (v.status == Status::Member)
        for (const auto& [name, sub] : v.checks)
            if (sub.value) {
                v.value = sub.value;
                break;
            }
    return v;
}

bool is_bv_domain(SpaceId s) { return s == int_bv || s == d_bv; }

std::string class_label(SpaceId from, SpaceId to) { return "(" + to_string(from) + ":" + to_string(to) + ")"; }

Verdict row_dual_check(const Matrix& a, SpaceId source, std::int64_t probe) {
    std::int64_t rows = std::min<std::int64_t>(probe, 4);
    for (std::int64_t n = 1; n <= rows; ++n) {
        Verdict r = dual_member(source, DualKind::Beta, Seq::finite(a.row(n)), probe);
        if (r.status == Status::NonMember)
            throw Error(ErrorCode::RowNotInDual, "row " + std::to_string(n) + " is not in [" + to_string(source) + "]^beta");
    }
    return Verdict::member("rows in [" + to_string(source) + "]^beta", std::nullopt,
                           "every row has finite support, hence lies in every dual (rows 1.." + std::to_string(rows) +
                               " confirmed by the dual checker)");
}

} // namespace

Verdict class_check(const Matrix& a, SpaceId from, SpaceId to, std::int64_t probe) {
    if (probe < 1) throw Error(ErrorCode::Unsupported, "probe must be >= 1");
    if (is_bv_domain(from) || is_bv_domain(to)) return reduce_and_check(a, ClassSpec{from, to}, probe);
    if (from.decoration != Decoration::None || to.decoration != Decoration::None)
        throw Error(ErrorCode::Unsupported, "no characterisation implemented for " + class_label(from, to));
    return evaluate_all(a, class_conditions(from.base, to.base), probe, class_label(from, to));
}

ClassSpec parse_class(std::string_view text) {
    auto parts = detail::split_top(detail::trim(text), ':');
    // Space literals contain no ':', so exactly two parts are expected.
    if (parts.size() != 2) detail::parse_fail(text, "<space>:<space>, e.g. int_bv:linf");
    return ClassSpec{parse_space(parts[0]), parse_space(parts[1])};
}

std::string to_string(const ClassSpec& c) { return to_string(c.from) + ":" + to_string(c.to); }

Verdict reduce_and_check(const Matrix& a, const ClassSpec& cls, std::int64_t probe) {
    const SpaceId from = cls.from;
    const SpaceId to = cls.to;
    if (is_bv_domain(from) && is_bv_domain(to))
        throw Error(ErrorCode::Unsupported, "reduction needs a plain space on one side: " + class_label(from, to));
    Verdict v;
    Verdict inner;
    if (is_bv_domain(from)) {
        if (to.decoration != Decoration::None)
            throw Error(ErrorCode::Unsupported, "target must be a plain space: " + class_label(from, to));
        Flavor f = from == int_bv ? Flavor::OverBar : Flavor::Tilde;
        v.checks.push_back({"rows in [" + to_string(from) + "]^beta", row_dual_check(a, from, probe)});
        Matrix d = derived_matrix(a, f);
        inner = class_check(d, plain(BaseSpace::L1), to, probe);
        v.rule = class_label(from, to) + " via " + std::string(to_string(f)) + " -> " +
                 class_label(plain(BaseSpace::L1), to);
    } else if (is_bv_domain(to)) {
        if (from.decoration != Decoration::None)
            throw Error(ErrorCode::Unsupported, "source must be a plain space: " + class_label(from, to));
        Flavor f = to == int_bv ? Flavor::Hat : Flavor::Arrow;
        Matrix d = derived_matrix(a, f);
        inner = class_check(d, from, plain(BaseSpace::L1), probe);
        v.rule = class_label(from, to) + " via " + std::string(to_string(f)) + " -> " +
                 class_label(from, plain(BaseSpace::L1));
    } else {
        return class_check(a, from, to, probe);
    }
    v.checks.push_back({"reduced " + inner.rule, inner});
    v.status = conjunction(v.checks);
    v.value = inner.value;
    v.certificate = inner.certificate;
    if (v.status != Status::Member) v.value.reset();
    return v;
}

CorollaryFamily parse_corollary_family(std::string_view text) {
    std::string_view s = detail::trim(text);
    if (s == "source:int_bv") return CorollaryFamily::IntBvSource;
    if (s == "source:d_bv") return CorollaryFamily::DBvSource;
    if (s == "target:int_bv") return CorollaryFamily::IntBvTarget;
    if (s == "target:d_bv") return CorollaryFamily::DBvTarget;
    detail::parse_fail(text, "source:int_bv | source:d_bv | target:int_bv | target:d_bv");
}

std::string_view to_string(CorollaryFamily f) {
    switch (f) {
    case CorollaryFamily::IntBvSource: return "source:int_bv";
    case CorollaryFamily::DBvSource: return "source:d_bv";
    case CorollaryFamily::IntBvTarget: return "target:int_bv";
    case CorollaryFamily::DBvTarget: return "target:d_bv";
    }
    return "?";
}

namespace {

struct CorollaryItem {
    std::string space;  // Y
    std::vector<Condition> conditions;
};

const std::vector<CorollaryItem>& corollary_table(CorollaryFamily f) {
    using C = Condition;
    static const std::vector<CorollaryItem> source = {
        {"linf", {C::SupEntry}},
        {"c", {C::SupEntry, C::ColumnLimits}},
        {"c0", {C::SupEntry, C::ColumnLimitsZero}},
        {"bs", {C::SupPartialColumnSum}},
        {"cs", {C::SupPartialColumnSum, C::ColumnSeriesConverge}},
        {"c0s", {C::SupPartialColumnSum, C::ColumnSeriesZero}},
    };
    static const std::vector<CorollaryItem> target = {
        {"linf", {C::FiniteSubsetSupForward}},
        {"bs", {C::EntryRowLimitZero, C::FiniteSubsetSupForward}},
        {"cs", {C::FiniteSubsetSupBackward}},
        {"c0s", {C::FiniteSubsetSupForward}},
    };
    return f == CorollaryFamily::IntBvSource || f == CorollaryFamily::DBvSource ? source : target;
}

Flavor corollary_flavor(CorollaryFamily f) {
    switch (f) {
    case CorollaryFamily::IntBvSource: return Flavor::OverBar;
    case CorollaryFamily::DBvSource: return Flavor::Tilde;
    case CorollaryFamily::IntBvTarget: return Flavor::Hat;
    case CorollaryFamily::DBvTarget: return Flavor::Arrow;
    }
    return Flavor::OverBar;
}

std::optional<std::size_t> roman(std::string_view s) {
    static const std::vector<std::string_view> numerals = {"i", "ii", "iii", "iv", "v", "vi"};
    for (std::size_t i = 0; i < numerals.size(); ++i)
        if (numerals[i] == s) return i;
    return std::nullopt;
}

} // namespace

std::vector<std::string> corollary_items(CorollaryFamily f) {
    std::vector<std::string> out;
    for (const auto& item : corollary_table(f)) out.push_back(item.space);
    return out;
}

Verdict corollary_suite(CorollaryFamily f, const Matrix& a, std::string_view item, std::int64_t probe) {
    const auto& table = corollary_table(f);
    std::string_view key = detail::trim(item);
    bool target = f == CorollaryFamily::IntBvTarget || f == CorollaryFamily::DBvTarget;
    if (target && (key == "c" || key == "c0")) key = "linf";  // (linf:X) = (c:X) = (c0:X)
    std::optional<std::size_t> index = roman(key);
    if (!index)
        for (std::size_t i = 0; i < table.size(); ++i)
            if (table[i].space == key) index = i;
    if (!index || *index >= table.size())
        detail::parse_fail(item, target ? "i..iv or linf | c | c0 | bs | cs | c0s" : "i..vi or linf | c | c0 | bs | cs | c0s");
    const CorollaryItem& chosen = table[*index];

    Flavor flavor = corollary_flavor(f);
    SpaceId domain = f == CorollaryFamily::IntBvSource || f == CorollaryFamily::IntBvTarget ? int_bv : d_bv;
    SpaceId y = parse_space(chosen.space);
    std::string label = target ? "(" + to_string(y) + ":" + to_string(domain) + ")"
                               : "(" + to_string(domain) + ":" + to_string(y) + ")";
    Verdict v = evaluate_all(derived_matrix(a, flavor), chosen.conditions, probe,
                             label + " with " + std::string(to_string(flavor)) + " entries");
    if (!target) {
        v.checks.insert(v.checks.begin(), {"rows in [" + to_string(domain) + "]^beta", row_dual_check(a, domain, probe)});
        std::optional<Scalar> value = v.value;
        v.status = conjunction(v.checks);
        v.value = v.status == Status::Member ? value : std::nullopt;
    }
    return v;
}

} // namespace seqspace
