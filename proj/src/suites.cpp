#include "seqspace/suites.hpp"

#include "seqspace/duality.hpp"
#include "seqspace/error.hpp"
#include "seqspace/matclass.hpp"
#include "seqspace/matrix.hpp"
#include "seqspace/spaces.hpp"
#include "seqspace/triangle.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>

namespace seqspace {

std::uint64_t Rng::next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
    if (hi < lo) throw Error(ErrorCode::Unsupported, "empty range");
    auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(next());
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t v;
    do v = next();
    while (v >= limit);
    return lo + static_cast<std::int64_t>(v % span);
}

std::uint64_t trial_seed(std::uint64_t seed, std::int64_t index) {
    Rng r(seed ^ (0xd1b54a32d192ed03ULL * static_cast<std::uint64_t>(index + 1)));
    return r.next();
}

namespace {

constexpr std::int64_t kEntryBound = 1000;
constexpr std::int64_t kMaxSupport = 64;

Scalar random_scalar(Rng& rng) {
    return make_scalar(rng.uniform(-kEntryBound, kEntryBound), rng.uniform(1, kEntryBound));
}

// Nonzero last entry, so the support bound is the length.
Seq random_finite(Rng& rng, std::int64_t max_support = kMaxSupport) {
    std::int64_t m = rng.uniform(1, max_support);
    std::vector<Scalar> v;
    for (std::int64_t i = 0; i < m; ++i) v.push_back(rng.uniform(0, 4) == 0 ? Scalar(0) : random_scalar(rng));
    while (v.back() == 0) v.back() = random_scalar(rng);
    return Seq::finite(std::move(v));
}

RationalFunction random_rule(Rng& rng) {
    Scalar c = make_scalar(rng.uniform(-9, 9), rng.uniform(1, 5));
    switch (rng.uniform(0, 3)) {
    case 0: return RationalFunction::monomial(c, 1);
    case 1: return RationalFunction::monomial(c, -1);
    case 2: return RationalFunction::monomial(c, -2);
    default: return RationalFunction::constant(c);
    }
}

Matrix random_banded(Rng& rng) {
    BandProfile p;
    std::int64_t b = rng.uniform(0, 3);
    std::string name = "band:";
    for (std::int64_t o = 0; o <= b; ++o) {
        p.lower.push_back(random_rule(rng));
        if (o) name += ",";
        name += std::to_string(o) + "=" + rule_literal(p.lower.back());
    }
    return Matrix::banded(name, p);
}

std::int64_t len(const Seq& x) { return static_cast<std::int64_t>(x.support_bound()); }

Scalar dot_row(const Matrix& a, std::int64_t n, const Seq& x) {
    Scalar s(0);
    std::int64_t end = a.row_end(n);
    for (std::int64_t k = 1; k <= end; ++k) s += a.entry(n, k) * x.term(k);
    return s;
}

Scalar dot_derived(const Matrix& a, Flavor f, std::int64_t n, const Seq& y) {
    Scalar s(0);
    std::int64_t end = std::max(a.row_end(n), a.row_end(std::max<std::int64_t>(n - 1, 1)));
    for (std::int64_t k = 1; k <= end; ++k) s += derived(a, f, n, k) * y.term(k);
    return s;
}

std::string literal(const Seq& x) {
    std::string s = to_literal(x);
    return s.size() > 80 ? s.substr(0, 77) + "..." : s;
}

// Collects checks of a single trial.
class Trial {
public:
    Trial(SuiteSummary& out, std::int64_t index, std::uint64_t seed) : out_(out), index_(index), seed_(seed) {}

    void expect(bool ok, const std::string& check, const std::function<std::string()>& detail) {
        ++out_.checks;
        if (!ok) out_.failures.push_back({check, index_, seed_, detail()});
    }

private:
    SuiteSummary& out_;
    std::int64_t index_;
    std::uint64_t seed_;
};

using TrialFn = std::function<void(Rng&, Trial&, std::int64_t probe)>;

void isometry_trial(Rng& rng, Trial& t, std::int64_t) {
    Seq x = random_finite(rng);
    std::int64_t m = len(x);
    Scalar lhs = norm(int_bv, x);
    Scalar rhs = base_norm(BaseSpace::L1, gamma_transform(x, m + 1));
    t.expect(lhs == rhs, "norm(int_bv, x) = |Gamma x|_1", [&] { return literal(x); });
    lhs = norm(d_bv, x);
    rhs = base_norm(BaseSpace::L1, sigma_transform(x, m + 1));
    t.expect(lhs == rhs, "norm(d_bv, x) = |Sigma x|_1", [&] { return literal(x); });
}

void ak_trial(Rng& rng, Trial& t, std::int64_t) {
    Seq x = random_finite(rng);
    std::int64_t m = len(x);
    for (SpaceId s : {int_bv, d_bv}) {
        std::string sp = to_string(s);
        Scalar prev = ak_defect(s, x, 0);
        Scalar prev_section = section_defect(s, x, 0);
        for (std::int64_t n = 1; n <= m + 1; ++n) {
            Scalar cur = ak_defect(s, x, n);
            Scalar cur_section = section_defect(s, x, n);
            t.expect(cur <= prev, "ak_defect nonincreasing in " + sp,
                     [&] { return literal(x) + " at n=" + std::to_string(n); });
            t.expect(cur_section <= prev_section, "section_defect nonincreasing in " + sp,
                     [&] { return literal(x) + " at n=" + std::to_string(n); });
            prev = cur;
            prev_section = cur_section;
        }
        t.expect(prev == 0, "ak_defect zero at m+1 in " + sp, [&] { return literal(x); });
        t.expect(section_defect(s, x, m) == 0, "section_defect zero at m in " + sp, [&] { return literal(x); });
    }
}

void monotone_trial(Rng& rng, Trial& t, std::int64_t) {
    Seq x = random_finite(rng);
    std::int64_t m = len(x);
    for (SpaceId s : {int_bv, d_bv}) {
        Scalar prev(0);
        for (std::int64_t n = 1; n <= m; ++n) {
            Scalar cur = norm(s, truncate(x, n));
            t.expect(prev <= cur, "norm of truncations nondecreasing in " + to_string(s),
                     [&] { return literal(x) + " at n=" + std::to_string(n); });
            prev = cur;
        }
        t.expect(prev == norm(s, x), "full truncation recovers the norm in " + to_string(s),
                 [&] { return literal(x); });
    }
}

// x minus the first n terms of its expansion in the basis of `space`.
Seq expansion_remainder(SpaceId space, const Seq& x, std::int64_t n) {
    std::int64_t m = std::max(len(x), n);
    Seq c = expansion_coefficients(space, x, std::max<std::int64_t>(n, 1));
    std::vector<Scalar> prefix;
    Scalar running(0);
    for (std::int64_t j = 1; j <= m; ++j) {
        if (j <= n) running += c.term(j);
        Scalar scale = space == int_bv ? Scalar(1 / make_scalar(j)) : make_scalar(j);
        prefix.push_back(x.term(j) - running * scale);
    }
    if (running == 0) return Seq::finite(std::move(prefix));
    return Seq::power_law(-running, space == int_bv ? -1 : 1).with_prefix(std::move(prefix));
}

void basis_trial(Rng& rng, Trial& t, std::int64_t probe) {
    std::int64_t block = std::min<std::int64_t>(64, probe);
    std::int64_t k = rng.uniform(1, std::min<std::int64_t>(16, block));
    for (SpaceId s : {int_bv, d_bv}) {
        Seq b = basis_vector(s, k).realization;
        Seq image = expansion_coefficients(s, b, block);
        t.expect(equal_up_to(image, Seq::unit(k), block), "transform of basis vector is a unit vector",
                 [&] { return to_string(s) + " k=" + std::to_string(k); });
    }
    Seq x = random_finite(rng, 24);
    std::int64_t n = rng.uniform(0, len(x) + 1);
    for (SpaceId s : {int_bv, d_bv}) {
        Scalar dist = norm(s, expansion_remainder(s, x, n));
        t.expect(dist == ak_defect(s, x, n), "expansion distance equals ak_defect in " + to_string(s),
                 [&] { return literal(x) + " n=" + std::to_string(n); });
    }
}

void domain_trial(Rng& rng, Trial& t, std::int64_t probe) {
    Seq x = random_finite(rng);
    std::int64_t top = std::min<std::int64_t>(kMaxSupport, probe);
    TriangleOp delta = TriangleOp::delta();
    Seq ix = decorate(x, Decoration::Integrated);
    Seq dx = decorate(x, Decoration::Differentiated);
    bool gamma_ok = true;
    bool sigma_ok = true;
    for (std::int64_t n = 1; n <= top; ++n) {
        gamma_ok = gamma_ok && apply(TriangleOp::gamma(), x, n) == apply(delta, ix, n);
        sigma_ok = sigma_ok && apply(TriangleOp::sigma(), x, n) == apply(delta, dx, n);
    }
    t.expect(gamma_ok, "Gamma x = Delta(integrated x)", [&] { return literal(x); });
    t.expect(sigma_ok, "Sigma x = Delta(differentiated x)", [&] { return literal(x); });

    Seq back_g = apply_block(invert(TriangleOp::gamma(), top), gamma_transform(x, top), top);
    Seq back_s = apply_block(invert(TriangleOp::sigma(), top), sigma_transform(x, top), top);
    t.expect(equal_up_to(back_g, x, top), "Gamma^-1 Gamma x = x", [&] { return literal(x); });
    t.expect(equal_up_to(back_s, x, top), "Sigma^-1 Sigma x = x", [&] { return literal(x); });
}

Seq random_dual_candidate(Rng& rng) {
    Scalar c = make_scalar(rng.uniform(1, 9), rng.uniform(1, 4));
    if (rng.uniform(0, 1) == 0) c = -c;
    static const std::vector<Scalar> ratios = {make_scalar(1, 2), make_scalar(-1, 2), Scalar(1), Scalar(-1),
                                               Scalar(2)};
    switch (rng.uniform(0, 3)) {
    case 0: return random_finite(rng, 12);
    case 1: return Seq::power_law(c, rng.uniform(-3, 2));
    case 2: return Seq::alternating(c);
    default:
        return Seq::power_geometric(c, rng.uniform(-3, 2),
                                    ratios[static_cast<std::size_t>(rng.uniform(0, 4))]);
    }
}

void duals_trial(Rng& rng, Trial& t, std::int64_t probe) {
    Seq a = random_dual_candidate(rng);
    for (SpaceId s : {int_bv, d_bv}) {
        std::map<DualKind, Status> analytic;
        for (DualKind k : {DualKind::Alpha, DualKind::Beta, DualKind::Gamma}) {
            Verdict p = dual_member(s, k, a, probe);
            Verdict q = dual_member_via_matrix(s, k, a, probe);
            analytic[k] = p.status;
            bool decided = p.status != Status::Inconclusive && q.status != Status::Inconclusive;
            t.expect(!decided || p.status == q.status, "analytic and matrix paths agree", [&] {
                return to_string(s) + " " + std::string(to_string(k)) + " " + to_literal(a);
            });
        }
        t.expect(analytic[DualKind::Beta] != Status::Member || analytic[DualKind::Gamma] == Status::Member,
                 "beta member implies gamma member", [&] { return to_string(s) + " " + to_literal(a); });
    }
    // E-matrix identity on finite pairs.
    Seq fa = random_finite(rng, 16);
    Seq x = random_finite(rng, 16);
    std::int64_t top = std::min<std::int64_t>(probe, 20);
    AssociatedMatrix e = associated_matrix(int_bv, DualKind::Beta, fa);
    Seq y = gamma_transform(x, top);
    bool ok = true;
    for (std::int64_t n = 1; n <= top; ++n) ok = ok && pairing_partial(fa, x, DualKind::Beta, n) == apply(e.realized, y, n);
    t.expect(ok, "sum a_k x_k = (E Gamma x)_n", [&] { return literal(fa) + " with " + literal(x); });
}

void reductions_trial(Rng& rng, Trial& t, std::int64_t probe) {
    Matrix a = random_banded(rng);
    Seq x = random_finite(rng, 32);
    std::int64_t top = std::min<std::int64_t>(kMaxSupport, probe);
    Seq y = gamma_transform(x, len(x) + 1);
    Seq z = sigma_transform(x, len(x) + 1);
    bool bar_ok = true;
    bool tilde_ok = true;
    for (std::int64_t n = 1; n <= top; ++n) {
        Scalar ax = dot_row(a, n, x);
        bar_ok = bar_ok && ax == dot_derived(a, Flavor::OverBar, n, y);
        tilde_ok = tilde_ok && ax == dot_derived(a, Flavor::Tilde, n, z);
    }
    t.expect(bar_ok, "sum a_nk x_k = sum bar(a)_nk (Gamma x)_k", [&] { return a.name() + " " + literal(x); });
    t.expect(tilde_ok, "sum a_nk x_k = sum tilde(a)_nk (Sigma x)_k", [&] { return a.name() + " " + literal(x); });

    // hat(A) z = Gamma(A z), arrow(A) z = Sigma(A z).
    bool hat_ok = true;
    bool arrow_ok = true;
    for (std::int64_t n = 1; n <= top; ++n) {
        Scalar cur = dot_row(a, n, x);
        Scalar prev = n > 1 ? dot_row(a, n - 1, x) : Scalar(0);
        Scalar nn = make_scalar(n);
        hat_ok = hat_ok && dot_derived(a, Flavor::Hat, n, x) == nn * cur - (nn - 1) * prev;
        Scalar expect_arrow = n > 1 ? Scalar(cur / nn - prev / (nn - 1)) : cur;
        arrow_ok = arrow_ok && dot_derived(a, Flavor::Arrow, n, x) == expect_arrow;
    }
    t.expect(hat_ok, "hat(A) x = Gamma(A x)", [&] { return a.name() + " " + literal(x); });
    t.expect(arrow_ok, "arrow(A) x = Sigma(A x)", [&] { return a.name() + " " + literal(x); });

    // Telescoping of the hat rows.
    std::int64_t m = rng.uniform(1, top);
    std::int64_t k = rng.uniform(1, m);
    Scalar total(0);
    for (std::int64_t n = 1; n <= m; ++n) total += derived(a, Flavor::Hat, n, k);
    t.expect(total == make_scalar(m) * a.entry(m, k), "sum_{n<=m} hat(a)_nk = m a_mk",
             [&] { return a.name() + " m=" + std::to_string(m) + " k=" + std::to_string(k); });

    // Reduction and explicit composition agree on finite blocks.
    std::int64_t rows = rng.uniform(1, 8);
    Block blk = a.window(rows);
    Block composed;
    for (std::int64_t n = 1; n <= rows + 1; ++n) {
        std::vector<Scalar> row;
        std::size_t width = blk[static_cast<std::size_t>(std::min(n, rows) - 1)].size();
        for (std::size_t kk = 1; kk <= width; ++kk) {
            Scalar cur = n <= rows && kk <= blk[static_cast<std::size_t>(n - 1)].size()
                             ? blk[static_cast<std::size_t>(n - 1)][kk - 1]
                             : Scalar(0);
            Scalar prev = n > 1 && kk <= blk[static_cast<std::size_t>(n - 2)].size()
                              ? blk[static_cast<std::size_t>(n - 2)][kk - 1]
                              : Scalar(0);
            row.push_back(make_scalar(n) * cur - make_scalar(n - 1) * prev);
        }
        composed.push_back(std::move(row));
    }
    Matrix fa = Matrix::finite(blk);
    for (BaseSpace from : {BaseSpace::L1, BaseSpace::Linf}) {
        Verdict via = reduce_and_check(fa, ClassSpec{plain(from), int_bv}, probe);
        Verdict direct = class_check(Matrix::finite(composed), plain(from), plain(BaseSpace::L1), probe);
        t.expect(via.status == direct.status && via.value == direct.value,
                 "reduction agrees with Gamma composition", [&] { return a.name() + " rows=" + std::to_string(rows); });
    }
}

void corollaries_trial(Rng& rng, Trial& t, std::int64_t probe) {
    Matrix a = random_banded(rng);
    struct Family {
        CorollaryFamily f;
        Flavor flavor;
        bool target;
    };
    for (Family fam : {Family{CorollaryFamily::IntBvSource, Flavor::OverBar, false},
                       Family{CorollaryFamily::DBvSource, Flavor::Tilde, false},
                       Family{CorollaryFamily::IntBvTarget, Flavor::Hat, true},
                       Family{CorollaryFamily::DBvTarget, Flavor::Arrow, true}}) {
        Matrix d = derived_matrix(a, fam.flavor);
        for (const std::string& item : corollary_items(fam.f)) {
            Verdict via = corollary_suite(fam.f, a, item, probe);
            SpaceId y = parse_space(item);
            Verdict manual = fam.target ? class_check(d, y, plain(BaseSpace::L1), probe)
                                        : class_check(d, plain(BaseSpace::L1), y, probe);
            t.expect(via.status == manual.status && via.value == manual.value, "corollary dispatch matches manual",
                     [&] { return std::string(to_string(fam.f)) + " " + item + " on " + a.name(); });
        }
    }
}

const std::vector<std::pair<std::string, TrialFn>>& registry() {
    static const std::vector<std::pair<std::string, TrialFn>> r = {
        {"isometry", isometry_trial},       {"ak", ak_trial},
        {"monotone", monotone_trial},       {"basis", basis_trial},
        {"domain-identities", domain_trial}, {"duals", duals_trial},
        {"reductions", reductions_trial},   {"corollaries", corollaries_trial},
    };
    return r;
}

} // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [name, fn] : registry()) out.push_back(name);
        return out;
    }();
    return names;
}

SuiteSummary verify_suite(std::string_view name, std::int64_t trials, std::int64_t probe, std::uint64_t seed) {
    if (trials < 1) throw Error(ErrorCode::Unsupported, "trials must be >= 1");
    if (probe < 1) throw Error(ErrorCode::Unsupported, "probe must be >= 1");
    const TrialFn* fn = nullptr;
    for (const auto& [n, f] : registry())
        if (n == name) fn = &f;
    if (!fn) {
        std::string known;
        for (const auto& n : suite_names()) known += (known.empty() ? "" : " | ") + n;
        throw Error(ErrorCode::UnknownSuite, "unknown suite '" + std::string(name) + "'; expected " + known);
    }
    auto start = std::chrono::steady_clock::now();
    SuiteSummary out;
    out.name = std::string(name);
    out.trials = trials;
    for (std::int64_t i = 0; i < trials; ++i) {
        std::uint64_t s = trial_seed(seed, i);
        Rng rng(s);
        Trial t(out, i, s);
        try {
            (*fn)(rng, t, probe);
        } catch (const std::exception& e) {
            ++out.checks;
            out.failures.push_back({"trial raised", i, s, e.what()});
        }
    }
    out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

} // namespace seqspace
