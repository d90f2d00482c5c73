#include "seqspace/sequence.hpp"

#include "parse_util.hpp"
#include "seqspace/error.hpp"

#include <utility>

namespace seqspace {

namespace {

constexpr std::string_view seq_grammar =
    "finite:[p/q,...] | const:c | powerlaw:c,p | geom:c,r | alt:c | pgeom:c,p,r"
    " [;prefix:[...]]";

} // namespace

FamilyKind Family::kind() const {
    if (ratio == 1) return power == 0 ? FamilyKind::Constant : FamilyKind::PowerLaw;
    if (ratio == -1 && power == 0) return FamilyKind::Alternating;
    if (power == 0 && absolute(ratio) < 1) return FamilyKind::Geometric;
    return FamilyKind::PowerGeometric;
}

Scalar Family::term(std::int64_t k) const {
    if (coeff == 0) return Scalar(0);
    Scalar t = coeff * power_of_index(k, power);
    if (ratio != 1) t *= seqspace::power(ratio, k);
    return t;
}

Seq Seq::finite(std::vector<Scalar> values) {
    Seq s;
    s.values_ = std::move(values);
    return s;
}

Seq Seq::unit(std::int64_t k) {
    if (k < 1) throw Error(ErrorCode::Unsupported, "unit vector index must be >= 1");
    std::vector<Scalar> v(static_cast<std::size_t>(k), Scalar(0));
    v.back() = 1;
    return finite(std::move(v));
}

Seq Seq::constant(Scalar c) { return power_geometric(std::move(c), 0, Scalar(1)); }

Seq Seq::power_law(Scalar c, std::int64_t p) { return power_geometric(std::move(c), p, Scalar(1)); }

Seq Seq::geometric(Scalar c, Scalar r) {
    if (absolute(r) >= 1) throw Error(ErrorCode::Unsupported, "geometric ratio must satisfy |r| < 1");
    return power_geometric(std::move(c), 0, std::move(r));
}

Seq Seq::alternating(Scalar c) { return power_geometric(std::move(c), 0, Scalar(-1)); }

Seq Seq::power_geometric(Scalar c, std::int64_t p, Scalar r) {
    Seq s;
    s.family_ = Family{std::move(c), p, std::move(r)};
    return s;
}

Seq Seq::with_prefix(std::vector<Scalar> prefix) const {
    Seq s = *this;
    if (is_finite()) {
        if (s.values_.size() < prefix.size()) s.values_.resize(prefix.size(), Scalar(0));
        for (std::size_t i = 0; i < prefix.size(); ++i) s.values_[i] = prefix[i];
    } else {
        if (s.values_.size() < prefix.size()) {
            s.values_ = std::move(prefix);
        } else {
            for (std::size_t i = 0; i < prefix.size(); ++i) s.values_[i] = prefix[i];
        }
    }
    return s;
}

Scalar Seq::term(std::int64_t k) const {
    if (k < 1) throw Error(ErrorCode::Unsupported, "sequence index must be >= 1");
    auto idx = static_cast<std::size_t>(k - 1);
    if (idx < values_.size()) return values_[idx];
    if (family_) return family_->term(k);
    return Scalar(0);
}

std::vector<Scalar> Seq::head(std::int64_t n) const {
    std::vector<Scalar> out;
    out.reserve(static_cast<std::size_t>(n > 0 ? n : 0));
    for (std::int64_t k = 1; k <= n; ++k) out.push_back(term(k));
    return out;
}

bool structurally_equal(const Seq& a, const Seq& b) {
    if (a.family_.has_value() != b.family_.has_value()) return false;
    if (a.family_) {
        const Family& fa = *a.family_;
        const Family& fb = *b.family_;
        if (fa.coeff != fb.coeff || fa.power != fb.power || fa.ratio != fb.ratio) return false;
    }
    return a.values_ == b.values_;
}

Scalar term(const Seq& s, std::int64_t k) { return s.term(k); }

Seq decorate(const Seq& s, Decoration d) {
    if (d == Decoration::None) return s;
    std::vector<Scalar> values = s.values();
    for (std::size_t i = 0; i < values.size(); ++i) {
        Scalar k(static_cast<long>(i + 1));
        if (d == Decoration::Integrated) values[i] *= k;
        else values[i] /= k;
    }
    if (s.is_finite()) return Seq::finite(std::move(values));
    const Family& f = *s.family();
    std::int64_t p = d == Decoration::Integrated ? f.power + 1 : f.power - 1;
    return Seq::power_geometric(f.coeff, p, f.ratio).with_prefix(std::move(values));
}

Seq truncate(const Seq& s, std::int64_t n) {
    if (n < 1) throw Error(ErrorCode::Unsupported, "truncation length must be >= 1");
    return Seq::finite(s.head(n));
}

bool equal_up_to(const Seq& a, const Seq& b, std::int64_t bound) {
    for (std::int64_t k = 1; k <= bound; ++k)
        if (a.term(k) != b.term(k)) return false;
    return true;
}

Seq parse_seq(std::string_view text) {
    auto parts = detail::split_top(detail::trim(text), ';');
    if (parts.empty() || parts.size() > 2) detail::parse_fail(text, seq_grammar);

    std::string_view body = parts[0];
    Seq s;
    if (detail::consume(body, "finite:")) {
        s = Seq::finite(detail::parse_scalar_list(body, seq_grammar));
    } else if (detail::consume(body, "const:")) {
        s = Seq::constant(parse_scalar(body));
    } else if (detail::consume(body, "alt:")) {
        s = Seq::alternating(parse_scalar(body));
    } else if (detail::consume(body, "powerlaw:")) {
        auto args = detail::split_top(body, ',');
        if (args.size() != 2) detail::parse_fail(text, seq_grammar);
        s = Seq::power_law(parse_scalar(args[0]), detail::parse_int(args[1], "an integer exponent"));
    } else if (detail::consume(body, "geom:")) {
        auto args = detail::split_top(body, ',');
        if (args.size() != 2) detail::parse_fail(text, seq_grammar);
        Scalar r = parse_scalar(args[1]);
        if (absolute(r) >= 1) detail::parse_fail(args[1], "a geometric ratio with |r| < 1");
        s = Seq::geometric(parse_scalar(args[0]), r);
    } else if (detail::consume(body, "pgeom:")) {
        auto args = detail::split_top(body, ',');
        if (args.size() != 3) detail::parse_fail(text, seq_grammar);
        s = Seq::power_geometric(parse_scalar(args[0]), detail::parse_int(args[1], "an integer exponent"),
                                 parse_scalar(args[2]));
    } else {
        detail::parse_fail(text, seq_grammar);
    }

    if (parts.size() == 2) {
        std::string_view pre = parts[1];
        if (!detail::consume(pre, "prefix:")) detail::parse_fail(parts[1], "prefix:[p/q,...]");
        s = s.with_prefix(detail::parse_scalar_list(pre, "prefix:[p/q,...]"));
    }
    return s;
}

std::string to_literal(const Seq& s) {
    if (s.is_finite()) return "finite:[" + detail::join_scalars(s.values()) + "]";
    const Family& f = *s.family();
    std::string out;
    switch (f.kind()) {
    case FamilyKind::Constant: out = "const:" + to_string(f.coeff); break;
    case FamilyKind::PowerLaw: out = "powerlaw:" + to_string(f.coeff) + "," + std::to_string(f.power); break;
    case FamilyKind::Geometric: out = "geom:" + to_string(f.coeff) + "," + to_string(f.ratio); break;
    case FamilyKind::Alternating: out = "alt:" + to_string(f.coeff); break;
    case FamilyKind::PowerGeometric:
        out = "pgeom:" + to_string(f.coeff) + "," + std::to_string(f.power) + "," + to_string(f.ratio);
        break;
    }
    if (!s.values().empty()) out += ";prefix:[" + detail::join_scalars(s.values()) + "]";
    return out;
}

std::string_view to_string(FamilyKind kind) {
    switch (kind) {
    case FamilyKind::Constant: return "Constant";
    case FamilyKind::PowerLaw: return "PowerLaw";
    case FamilyKind::Geometric: return "Geometric";
    case FamilyKind::Alternating: return "Alternating";
    case FamilyKind::PowerGeometric: return "PowerGeometric";
    }
    return "?";
}

std::string_view to_string(Decoration d) {
    switch (d) {
    case Decoration::None: return "none";
    case Decoration::Integrated: return "integrated";
    case Decoration::Differentiated: return "differentiated";
    }
    return "?";
}

} // namespace seqspace
