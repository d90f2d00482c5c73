#include "seqspace/triangle.hpp"

#include "parse_util.hpp"
#include "seqspace/error.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace seqspace {

RationalFunction BandProfile::at_offset(std::int64_t o) const {
    if (o < 0) {
        auto idx = -o - 1;
        return idx < upper_width() ? upper[static_cast<std::size_t>(idx)] : RationalFunction();
    }
    if (o <= lower_width()) return lower[static_cast<std::size_t>(o)];
    return fill ? *fill : RationalFunction();
}

Scalar BandProfile::entry(std::int64_t n, std::int64_t k) const {
    if (k < 1) return Scalar(0);
    std::int64_t o = n - k;
    const RationalFunction* f = nullptr;
    if (o < 0) {
        if (-o - 1 < upper_width()) f = &upper[static_cast<std::size_t>(-o - 1)];
    } else if (o <= lower_width()) {
        f = &lower[static_cast<std::size_t>(o)];
    } else if (fill) {
        f = &*fill;
    }
    if (!f || f->is_zero()) return Scalar(0);
    return f->at(n);
}

void BandProfile::simplify() {
    if (fill && fill->is_zero()) fill.reset();
    if (!fill)
        while (lower.size() > 1 && lower.back().is_zero()) lower.pop_back();
    while (!upper.empty() && upper.back().is_zero()) upper.pop_back();
}

struct TriangleOp::Impl {
    OpKind kind;
    std::string name;
    EntryFn entry;
    std::optional<std::int64_t> bandwidth;
    std::optional<BandProfile> profile;
};

namespace {

RationalFunction minus_n_minus_1() {  // -(n - 1)
    return RationalFunction(Polynomial(std::vector<Scalar>{Scalar(1), Scalar(-1)}), Polynomial::constant(Scalar(1)));
}

RationalFunction minus_inv_n_minus_1() {  // -1/(n - 1)
    return RationalFunction(Polynomial::constant(Scalar(-1)), Polynomial(std::vector<Scalar>{Scalar(-1), Scalar(1)}));
}

} // namespace

TriangleOp TriangleOp::band(std::string name, std::vector<RationalFunction> offsets) {
    if (offsets.empty()) throw Error(ErrorCode::Unsupported, "band operator needs at least a diagonal");
    auto shared = std::make_shared<const std::vector<RationalFunction>>(offsets);
    auto width = static_cast<std::int64_t>(offsets.size()) - 1;
    EntryFn fn = [shared](std::int64_t n, std::int64_t k) {
        const auto& rule = (*shared)[static_cast<std::size_t>(n - k)];
        return rule.is_zero() ? Scalar(0) : rule.at(n);
    };
    BandProfile profile;
    profile.lower = std::move(offsets);
    return TriangleOp(std::make_shared<const Impl>(Impl{OpKind::Band, std::move(name), std::move(fn), width, profile}));
}

TriangleOp TriangleOp::delta() {
    return band("delta", {RationalFunction::constant(Scalar(1)), RationalFunction::constant(Scalar(-1))});
}

TriangleOp TriangleOp::gamma() { return band("gamma", {RationalFunction::identity(), minus_n_minus_1()}); }

TriangleOp TriangleOp::sigma() { return band("sigma", {RationalFunction::reciprocal(), minus_inv_n_minus_1()}); }

TriangleOp TriangleOp::identity() { return diagonal("identity", RationalFunction::constant(Scalar(1))); }

TriangleOp TriangleOp::diagonal(std::string name, RationalFunction rule) {
    auto r = std::make_shared<const RationalFunction>(rule);
    EntryFn fn = [r](std::int64_t n, std::int64_t) { return r->is_zero() ? Scalar(0) : r->at(n); };
    BandProfile profile;
    profile.lower = {std::move(rule)};
    return TriangleOp(std::make_shared<const Impl>(Impl{OpKind::Diagonal, std::move(name), std::move(fn), 0, profile}));
}

TriangleOp TriangleOp::diagonal(const Seq& alpha) {
    EntryFn fn = [alpha](std::int64_t n, std::int64_t) { return alpha.term(n); };
    std::optional<BandProfile> profile;
    if (alpha.is_finite()) {
        BandProfile p;
        p.lower = {RationalFunction()};
        p.from_row = static_cast<std::int64_t>(alpha.support_bound()) + 1;
        profile = p;
    } else if (alpha.family()->ratio == 1 || alpha.family()->coeff == 0) {
        BandProfile p;
        const Family& f = *alpha.family();
        p.lower = {f.coeff == 0 ? RationalFunction() : RationalFunction::monomial(f.coeff, f.power)};
        p.from_row = static_cast<std::int64_t>(alpha.support_bound()) + 1;
        profile = p;
    }
    return TriangleOp(std::make_shared<const Impl>(
        Impl{OpKind::Diagonal, "diag:{" + to_literal(alpha) + "}", std::move(fn), 0, std::move(profile)}));
}

TriangleOp TriangleOp::closed_form(std::string name, EntryFn entry, std::optional<std::int64_t> bandwidth,
                                   std::optional<BandProfile> profile) {
    return TriangleOp(std::make_shared<const Impl>(
        Impl{OpKind::ClosedForm, std::move(name), std::move(entry), bandwidth, std::move(profile)}));
}

TriangleOp TriangleOp::gamma_inverse() {
    BandProfile p;
    p.lower = {RationalFunction::reciprocal()};
    p.fill = RationalFunction::reciprocal();
    return closed_form(
        "closed:gamma_inv", [](std::int64_t n, std::int64_t) { return make_scalar(1, n); }, std::nullopt, p);
}

TriangleOp TriangleOp::sigma_inverse() {
    BandProfile p;
    p.lower = {RationalFunction::identity()};
    p.fill = RationalFunction::identity();
    return closed_form(
        "closed:sigma_inv", [](std::int64_t n, std::int64_t) { return make_scalar(n); }, std::nullopt, p);
}

TriangleOp TriangleOp::product(const TriangleOp& left, const TriangleOp& right) {
    auto bl = left.bandwidth();
    auto br = right.bandwidth();
    EntryFn fn = [left, right, bl, br](std::int64_t n, std::int64_t k) {
        std::int64_t lo = k;
        std::int64_t hi = n;
        if (bl) lo = std::max(lo, n - *bl);
        if (br) hi = std::min(hi, k + *br);
        Scalar acc(0);
        for (std::int64_t j = lo; j <= hi; ++j) acc += left.entry(n, j) * right.entry(j, k);
        return acc;
    };
    std::optional<std::int64_t> width;
    if (bl && br) width = *bl + *br;
    std::optional<BandProfile> profile;
    if (left.profile() && right.profile()) profile = multiply_profiles(*left.profile(), *right.profile());
    return TriangleOp(std::make_shared<const Impl>(Impl{OpKind::Product, "prod:" + left.name() + "," + right.name(),
                                                        std::move(fn), width, std::move(profile)}));
}

Scalar TriangleOp::entry(std::int64_t n, std::int64_t k) const {
    if (n < 1 || k < 1) throw Error(ErrorCode::Unsupported, "matrix indices must be >= 1");
    if (k > n) return Scalar(0);
    if (impl_->bandwidth && n - k > *impl_->bandwidth) return Scalar(0);
    return impl_->entry(n, k);
}

OpKind TriangleOp::kind() const { return impl_->kind; }
const std::string& TriangleOp::name() const { return impl_->name; }
std::optional<std::int64_t> TriangleOp::bandwidth() const { return impl_->bandwidth; }
const std::optional<BandProfile>& TriangleOp::profile() const { return impl_->profile; }

std::int64_t TriangleOp::row_begin(std::int64_t n) const {
    return impl_->bandwidth ? std::max<std::int64_t>(1, n - *impl_->bandwidth) : 1;
}

bool TriangleOp::is_triangle_on(std::int64_t n_max) const {
    for (std::int64_t n = 1; n <= n_max; ++n)
        if (entry(n, n) == 0) return false;
    return true;
}

std::optional<BandProfile> multiply_profiles(const BandProfile& a, const BandProfile& b) {
    if (!a.upper.empty() || !b.upper.empty() || a.fill) return std::nullopt;
    BandProfile out;
    std::int64_t ba = a.lower_width();
    std::int64_t bb = b.lower_width();
    for (std::int64_t o = 0; o <= ba + bb; ++o) {
        RationalFunction acc;
        for (std::int64_t o1 = 0; o1 <= std::min(o, ba); ++o1) {
            const RationalFunction& fa = a.lower[static_cast<std::size_t>(o1)];
            RationalFunction fb = b.at_offset(o - o1);
            if (fa.is_zero() || fb.is_zero()) continue;
            acc = acc + fa * fb.shifted(-o1);
        }
        out.lower.push_back(acc);
    }
    if (b.fill) {
        RationalFunction acc;
        for (std::int64_t o1 = 0; o1 <= ba; ++o1) {
            const RationalFunction& fa = a.lower[static_cast<std::size_t>(o1)];
            if (!fa.is_zero()) acc = acc + fa * b.fill->shifted(-o1);
        }
        out.fill = acc;
    }
    out.from_row = std::max(a.from_row, b.from_row + ba);
    out.simplify();
    return out;
}

Scalar apply(const TriangleOp& a, const Seq& x, std::int64_t n) {
    Scalar acc(0);
    for (std::int64_t k = a.row_begin(n); k <= n; ++k) {
        Scalar e = a.entry(n, k);
        if (e != 0) acc += e * x.term(k);
    }
    return acc;
}

Seq apply_block(const TriangleOp& a, const Seq& x, std::int64_t n_max) {
    std::vector<Scalar> out;
    out.reserve(static_cast<std::size_t>(n_max));
    for (std::int64_t n = 1; n <= n_max; ++n) out.push_back(apply(a, x, n));
    return Seq::finite(std::move(out));
}

Seq gamma_transform(const Seq& x, std::int64_t n_max) {
    if (n_max < 1) throw Error(ErrorCode::Unsupported, "n_max must be >= 1");
    std::vector<Scalar> y;
    Scalar prev(0);  // (k-1) x_{k-1}
    for (std::int64_t k = 1; k <= n_max; ++k) {
        Scalar cur = x.term(k) * Scalar(static_cast<long>(k));
        y.push_back(cur - prev);
        prev = cur;
    }
    return Seq::finite(std::move(y));
}

Seq sigma_transform(const Seq& x, std::int64_t n_max) {
    if (n_max < 1) throw Error(ErrorCode::Unsupported, "n_max must be >= 1");
    std::vector<Scalar> y;
    Scalar prev(0);  // x_{k-1}/(k-1)
    for (std::int64_t k = 1; k <= n_max; ++k) {
        Scalar cur = x.term(k) / Scalar(static_cast<long>(k));
        y.push_back(cur - prev);
        prev = cur;
    }
    return Seq::finite(std::move(y));
}

namespace {

struct InverseMemo {
    explicit InverseMemo(TriangleOp op) : base(std::move(op)) {}

    TriangleOp base;
    std::mutex mutex;
    std::vector<std::vector<Scalar>> rows;  // rows[n-1][k-1]

    void fill_to(std::int64_t n) {
        std::optional<std::int64_t> width = base.bandwidth();
        while (static_cast<std::int64_t>(rows.size()) < n) {
            std::int64_t r = static_cast<std::int64_t>(rows.size()) + 1;
            Scalar diag = base.entry(r, r);
            if (diag == 0)
                throw Error(ErrorCode::SingularDiagonal, "zero diagonal entry at row " + std::to_string(r));
            std::vector<Scalar> row(static_cast<std::size_t>(r), Scalar(0));
            row.back() = 1 / diag;
            for (std::int64_t k = r - 1; k >= 1; --k) {
                std::int64_t lo = width ? std::max(k, r - *width) : k;
                Scalar acc(0);
                for (std::int64_t j = lo; j <= r - 1; ++j) {
                    Scalar e = base.entry(r, j);
                    if (e != 0) acc += e * rows[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(k - 1)];
                }
                row[static_cast<std::size_t>(k - 1)] = -acc / diag;
            }
            rows.push_back(std::move(row));
        }
    }

    Scalar get(std::int64_t n, std::int64_t k) {
        std::lock_guard<std::mutex> lock(mutex);
        fill_to(n);
        return rows[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(k - 1)];
    }
};

void cross_check(const TriangleOp& closed, const TriangleOp& substituted, std::int64_t n_max) {
    for (std::int64_t n = 1; n <= n_max; ++n)
        for (std::int64_t k = 1; k <= n; ++k)
            if (closed.entry(n, k) != substituted.entry(n, k))
                throw std::logic_error("closed-form inverse disagrees with forward substitution at (" +
                                       std::to_string(n) + "," + std::to_string(k) + ")");
}

} // namespace

TriangleOp invert_by_substitution(const TriangleOp& a, std::int64_t n_max) {
    auto memo = std::make_shared<InverseMemo>(a);
    {
        std::lock_guard<std::mutex> lock(memo->mutex);
        memo->fill_to(n_max);
    }
    return TriangleOp::closed_form(
        "inv:" + a.name(), [memo](std::int64_t n, std::int64_t k) { return memo->get(n, k); }, std::nullopt);
}

TriangleOp invert(const TriangleOp& a, std::int64_t n_max) {
    if (n_max < 1) throw Error(ErrorCode::Unsupported, "n_max must be >= 1");
    const std::string& name = a.name();
    if (name == "identity") return a;
    TriangleOp substituted = invert_by_substitution(a, n_max);
    if (name == "gamma" || name == "sigma") {
        TriangleOp closed = name == "gamma" ? TriangleOp::gamma_inverse() : TriangleOp::sigma_inverse();
        cross_check(closed, substituted, n_max);
        return closed;
    }
    if (name == "closed:gamma_inv") return TriangleOp::gamma();
    if (name == "closed:sigma_inv") return TriangleOp::sigma();
    return substituted;
}

Scalar compose(const TriangleOp& a, const TriangleOp& b, std::int64_t n, std::int64_t k) {
    if (k > n) return Scalar(0);
    std::int64_t lo = std::max(k, a.row_begin(n));
    std::int64_t hi = n;
    if (auto bb = b.bandwidth()) hi = std::min(hi, k + *bb);
    Scalar acc(0);
    for (std::int64_t j = lo; j <= hi; ++j) acc += a.entry(n, j) * b.entry(j, k);
    return acc;
}

Scalar row_tail_sum(const TriangleOp& a, std::int64_t n, std::int64_t k) {
    Scalar acc(0);
    for (std::int64_t j = std::max(k, a.row_begin(n)); j <= n; ++j) acc += a.entry(n, j);
    return acc;
}

RationalFunction parse_rule(std::string_view text) {
    std::string_view s = detail::trim(text);
    if (s == "n") return RationalFunction::identity();
    if (s == "1/n") return RationalFunction::reciprocal();
    if (detail::consume(s, "const:")) return RationalFunction::constant(parse_scalar(s));
    if (auto star = s.find("*n^"); star != std::string_view::npos)
        return RationalFunction::monomial(parse_scalar(s.substr(0, star)),
                                          detail::parse_int(s.substr(star + 3), "an integer exponent"));
    detail::parse_fail(text, "a rule n | 1/n | const:c | c*n^p");
}

std::string rule_literal(const RationalFunction& rule) {
    if (rule == RationalFunction::identity()) return "n";
    if (rule == RationalFunction::reciprocal()) return "1/n";
    if (rule.num().degree() <= 0 && rule.den().degree() == 0)
        return "const:" + to_string(rule.is_zero() ? Scalar(0) : rule.num().leading());
    std::int64_t p = rule.num().degree() - rule.den().degree();
    if (rule == RationalFunction::monomial(rule.num().leading(), p))
        return to_string(rule.num().leading()) + "*n^" + std::to_string(p);
    return rule.to_string();
}

namespace {

constexpr std::string_view op_grammar =
    "delta | gamma | sigma | identity | diag:(n|1/n|const:c|c*n^p) | prod:<op>,<op> | closed:(gamma_inv|sigma_inv)";

class OpParser {
public:
    explicit OpParser(std::string_view src) : src_(src) {}

    TriangleOp parse_all() {
        TriangleOp op = parse();
        if (pos_ != src_.size()) detail::parse_fail(src_.substr(pos_), op_grammar);
        return op;
    }

private:
    bool take(std::string_view word) {
        if (src_.substr(pos_, word.size()) != word) return false;
        pos_ += word.size();
        return true;
    }

    std::string_view rule_token() {
        std::size_t start = pos_;
        if (take("const:")) {
            while (pos_ < src_.size() && src_[pos_] != ',') ++pos_;
        } else if (take("1/n") || take("n")) {
        } else {
            detail::parse_fail(src_.substr(start), "a rule n | 1/n | const:c");
        }
        return src_.substr(start, pos_ - start);
    }

    TriangleOp parse() {
        if (take("delta")) return TriangleOp::delta();
        if (take("gamma")) return TriangleOp::gamma();
        if (take("sigma")) return TriangleOp::sigma();
        if (take("identity")) return TriangleOp::identity();
        if (take("closed:gamma_inv")) return TriangleOp::gamma_inverse();
        if (take("closed:sigma_inv")) return TriangleOp::sigma_inverse();
        if (take("diag:")) {
            std::string_view tok = rule_token();
            return TriangleOp::diagonal("diag:" + std::string(tok), parse_rule(tok));
        }
        if (take("prod:")) {
            TriangleOp left = parse();
            if (!take(",")) detail::parse_fail(src_.substr(pos_), "',' between product factors");
            TriangleOp right = parse();
            return TriangleOp::product(left, right);
        }
        detail::parse_fail(src_.substr(pos_), op_grammar);
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

} // namespace

TriangleOp parse_operator(std::string_view text) { return OpParser(detail::trim(text)).parse_all(); }

} // namespace seqspace
