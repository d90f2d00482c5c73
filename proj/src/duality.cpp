#include "seqspace/duality.hpp"

#include "parse_util.hpp"
#include "seqspace/error.hpp"
#include "seqspace/spaces.hpp"

#include <algorithm>
#include <utility>

namespace seqspace {

namespace {

void require_domain(SpaceId space) {
    if (space != int_bv && space != d_bv)
        throw Error(ErrorCode::Unsupported, "duals are implemented for int_bv and d_bv, not " + to_string(space));
}

bool effectively_finite(const Seq& a) { return a.is_finite() || a.family()->is_zero(); }

std::string dual_label(SpaceId space, DualKind kind) {
    return "[" + to_string(space) + "]^" + std::string(to_string(kind));
}

std::vector<TracePoint> pairing_trace(const Seq& a, const Seq& x, DualKind kind, std::int64_t probe) {
    std::vector<TracePoint> out;
    for (std::int64_t n : trace_indices(probe)) out.push_back({n, pairing_partial(a, x, kind, n)});
    return out;
}

bool strictly_increasing(const std::vector<TracePoint>& t) {
    for (std::size_t i = 1; i < t.size(); ++i)
        if (t[i].value <= t[i - 1].value) return false;
    return true;
}

} // namespace

DualKind parse_dual_kind(std::string_view text) {
    std::string_view s = detail::trim(text);
    if (s == "alpha") return DualKind::Alpha;
    if (s == "beta") return DualKind::Beta;
    if (s == "gamma") return DualKind::Gamma;
    detail::parse_fail(text, "alpha | beta | gamma");
}

std::string_view to_string(DualKind k) {
    switch (k) {
    case DualKind::Alpha: return "alpha";
    case DualKind::Beta: return "beta";
    case DualKind::Gamma: return "gamma";
    }
    return "?";
}

std::string_view to_string(AssociatedStyle s) {
    switch (s) {
    case AssociatedStyle::C: return "C";
    case AssociatedStyle::D: return "D";
    case AssociatedStyle::E: return "E";
    case AssociatedStyle::EPrime: return "E'";
    }
    return "?";
}

BaseSpace multiplier_target(DualKind k) {
    switch (k) {
    case DualKind::Alpha: return BaseSpace::L1;
    case DualKind::Beta: return BaseSpace::CS;
    case DualKind::Gamma: return BaseSpace::BS;
    }
    return BaseSpace::L1;
}

AssociatedMatrix associated_matrix(SpaceId space, DualKind kind, const Seq& a) {
    require_domain(space);
    bool integrated = space == int_bv;
    // x = Gamma^{-1} y gives x_k = k^{-1} sum_{j<=k} y_j; x = Sigma^{-1} y gives x_k = k sum_{j<=k} y_j.
    Seq u = decorate(a, integrated ? Decoration::Differentiated : Decoration::Integrated);
    if (kind == DualKind::Alpha) {
        AssociatedStyle style = integrated ? AssociatedStyle::C : AssociatedStyle::D;
        TriangleOp m = TriangleOp::closed_form(
            "assoc:" + std::string(to_string(style)), [u](std::int64_t n, std::int64_t) { return u.term(n); },
            std::nullopt);
        return {a, style, std::move(m), u};
    }
    AssociatedStyle style = integrated ? AssociatedStyle::E : AssociatedStyle::EPrime;
    TriangleOp m = TriangleOp::closed_form(
        "assoc:" + std::string(to_string(style)),
        [u](std::int64_t n, std::int64_t k) {
            Scalar acc(0);
            for (std::int64_t j = k; j <= n; ++j) acc += u.term(j);
            return acc;
        },
        std::nullopt);
    return {a, style, std::move(m), u};
}

Scalar pairing_partial(const Seq& a, const Seq& x, DualKind kind, std::int64_t n) {
    if (n < 1) throw Error(ErrorCode::Unsupported, "pairing length must be >= 1");
    Scalar acc(0);
    Scalar best(0);
    for (std::int64_t k = 1; k <= n; ++k) {
        Scalar p = a.term(k) * x.term(k);
        if (kind == DualKind::Alpha) {
            acc += absolute(p);
        } else {
            acc += p;
            best = std::max(best, absolute(acc));
        }
    }
    return kind == DualKind::Gamma ? best : acc;
}

SpaceId dual_space(SpaceId space, DualKind kind) {
    require_domain(space);
    Decoration flip = space == int_bv ? Decoration::Differentiated : Decoration::Integrated;
    return SpaceId{multiplier_target(kind), flip};
}

Seq pairing_witness(SpaceId space) {
    require_domain(space);
    return space == int_bv ? Seq::power_law(Scalar(1), -1) : Seq::power_law(Scalar(1), 1);
}

Verdict dual_member(SpaceId space, DualKind kind, const Seq& a, std::int64_t probe) {
    SpaceId target = dual_space(space, kind);
    Verdict inner = member(target, a, probe);
    Verdict v = inner;
    v.rule = dual_label(space, kind) + " = " + to_string(target);
    v.certificate = "identified dual " + v.rule + "; " + inner.certificate;
    v.checks = {{"membership in " + to_string(target), inner}};
    if (v.status == Status::NonMember) {
        Seq x = pairing_witness(space);
        v.trace = pairing_trace(a, x, kind, probe);
        v.certificate += "; witness x = " + to_literal(x) + " with norm 1 in " + to_string(space) +
                         (strictly_increasing(v.trace) ? ", pairing trace strictly increasing"
                                                       : ", pairing trace recorded");
    }
    return v;
}

Verdict dual_member_via_matrix(SpaceId space, DualKind kind, const Seq& a, std::int64_t probe) {
    AssociatedMatrix am = associated_matrix(space, kind, a);
    const TriangleOp& m = am.realized;
    std::string style(to_string(am.style));
    std::string rule = kind == DualKind::Alpha ? style + " in (l1:l1)"
                       : kind == DualKind::Beta ? style + " in (l1:c)"
                                                : style + " in (l1:linf)";
    std::string index_note =
        am.style == AssociatedStyle::D ? "; columns start at k=1 since row 1 of sigma maps x_1 to itself" : "";

    if (effectively_finite(a)) {
        auto rows = static_cast<std::int64_t>(a.support_bound());
        if (rows == 0) return Verdict::member(rule, Scalar(0), "zero matrix");
        if (kind == DualKind::Alpha) {
            Scalar best(0);
            for (std::int64_t k = 1; k <= rows; ++k) {
                Scalar col(0);
                for (std::int64_t n = k; n <= rows; ++n) col += absolute(m.entry(n, k));
                best = std::max(best, col);
            }
            return Verdict::member(rule, best,
                                   "rows beyond " + std::to_string(rows) +
                                       " vanish; exact sup_k sum_n |a_nk| = " + to_string(best) + index_note);
        }
        Scalar best(0);
        for (std::int64_t n = 1; n <= rows; ++n)
            for (std::int64_t k = 1; k <= n; ++k) best = std::max(best, absolute(m.entry(n, k)));
        std::string cert = "rows from " + std::to_string(rows) + " on coincide; exact sup |a_nk| = " + to_string(best);
        if (kind == DualKind::Beta) cert += "; column limits are the entries of row " + std::to_string(rows);
        return Verdict::member(rule, best, cert);
    }

    Verdict v;
    v.rule = rule;
    const Seq& u = am.column_generator;
    if (kind == DualKind::Alpha) {
        Verdict col = base_member(BaseSpace::L1, u, probe);
        v.checks.push_back({"sup_k sum_n |a_nk| < inf (column k sums |u_n| over n >= k, largest at k = 1)", col});
        v.value = col.value;
    } else {
        v.checks.push_back({"sup_{n,k} |a_nk| < inf (a_nk = U_n - U_{k-1} with U partial sums of u)",
                            base_member(BaseSpace::BS, u, probe)});
        if (kind == DualKind::Beta)
            v.checks.push_back({"lim_n a_nk exists for each k (tail sums of u converge)",
                                base_member(BaseSpace::CS, u, probe)});
        if (auto range = partial_sum_range(u)) v.value = range->second - range->first;
    }
    v.status = conjunction(v.checks);
    v.certificate = "column generator u = " + to_literal(u) + " classified analytically" + index_note;
    for (std::int64_t n : trace_indices(probe)) {
        Scalar q(0);
        if (kind == DualKind::Alpha) {
            for (std::int64_t i = 1; i <= n; ++i) q += absolute(m.entry(i, 1));
        } else {
            Scalar row(0);  // e_nk for k = n, n-1, ..., 1
            for (std::int64_t k = n; k >= 1; --k) {
                row += u.term(k);
                q = std::max(q, absolute(row));
            }
        }
        v.trace.push_back({n, q});
    }
    if (v.status != Status::Member) v.value.reset();
    return v;
}

TriangleOp build_multiplier_matrix(const TriangleOp& u, const Seq& alpha, std::int64_t n_max) {
    TriangleOp inverse = invert(u, n_max);
    return TriangleOp::product(TriangleOp::product(u, TriangleOp::diagonal(alpha)), inverse);
}

} // namespace seqspace
