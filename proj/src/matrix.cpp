#include "seqspace/matrix.hpp"

#include "parse_util.hpp"
#include "seqspace/error.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace seqspace {

struct Matrix::Impl {
    std::string name;
    EntryFn entry;
    RowEndFn row_end;
    std::optional<BandProfile> profile;
    std::optional<Block> block;
    RowFn row;
};

namespace {

std::string block_literal(const Block& rows) {
    std::string out = "finite:[";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i) out += ",";
        out += "[" + detail::join_scalars(rows[i]) + "]";
    }
    return out + "]";
}

} // namespace

Matrix Matrix::from_op(const TriangleOp& op) {
    return Matrix(std::make_shared<const Impl>(
        Impl{op.name(), [op](std::int64_t n, std::int64_t k) { return op.entry(n, k); },
             [](std::int64_t n) { return n; }, op.profile(), std::nullopt, nullptr}));
}

Matrix Matrix::zero() {
    return Matrix(std::make_shared<const Impl>(Impl{"zero", [](std::int64_t, std::int64_t) { return Scalar(0); },
                                                    [](std::int64_t) -> std::int64_t { return 0; }, std::nullopt,
                                                    Block{}, nullptr}));
}

Matrix Matrix::finite(Block rows) {
    auto shared = std::make_shared<const Block>(rows);
    std::string name = block_literal(rows);
    EntryFn entry = [shared](std::int64_t n, std::int64_t k) {
        if (n > static_cast<std::int64_t>(shared->size())) return Scalar(0);
        const auto& row = (*shared)[static_cast<std::size_t>(n - 1)];
        return k <= static_cast<std::int64_t>(row.size()) ? row[static_cast<std::size_t>(k - 1)] : Scalar(0);
    };
    RowEndFn row_end = [shared](std::int64_t n) -> std::int64_t {
        if (n > static_cast<std::int64_t>(shared->size())) return 0;
        return static_cast<std::int64_t>((*shared)[static_cast<std::size_t>(n - 1)].size());
    };
    return Matrix(std::make_shared<const Impl>(
        Impl{std::move(name), std::move(entry), std::move(row_end), std::nullopt, std::move(rows), nullptr}));
}

Matrix Matrix::banded(std::string name, BandProfile profile) {
    if (profile.from_row != 1) throw Error(ErrorCode::Unsupported, "banded matrix profile must start at row 1");
    auto shared = std::make_shared<const BandProfile>(profile);
    std::int64_t upper = profile.upper_width();
    return Matrix(std::make_shared<const Impl>(
        Impl{std::move(name), [shared](std::int64_t n, std::int64_t k) { return shared->entry(n, k); },
             [upper](std::int64_t n) { return n + upper; }, std::move(profile), std::nullopt, nullptr}));
}

Matrix Matrix::general(std::string name, EntryFn entry, RowEndFn row_end, std::optional<BandProfile> profile,
                       RowFn row) {
    return Matrix(std::make_shared<const Impl>(Impl{std::move(name), std::move(entry), std::move(row_end),
                                                    std::move(profile), std::nullopt, std::move(row)}));
}

Scalar Matrix::entry(std::int64_t n, std::int64_t k) const {
    if (n < 1 || k < 1) throw Error(ErrorCode::Unsupported, "matrix indices must be >= 1");
    if (k > impl_->row_end(n)) return Scalar(0);
    return impl_->entry(n, k);
}

std::int64_t Matrix::row_end(std::int64_t n) const { return impl_->row_end(n); }

std::vector<Scalar> Matrix::row(std::int64_t n) const {
    if (impl_->row) return impl_->row(n);
    std::vector<Scalar> out;
    std::int64_t end = row_end(n);
    out.reserve(static_cast<std::size_t>(std::max<std::int64_t>(end, 0)));
    for (std::int64_t k = 1; k <= end; ++k) out.push_back(impl_->entry(n, k));
    return out;
}

Matrix Matrix::renamed(std::string name) const {
    Impl copy = *impl_;
    copy.name = std::move(name);
    return Matrix(std::make_shared<const Impl>(std::move(copy)));
}

const std::string& Matrix::name() const { return impl_->name; }
const std::optional<BandProfile>& Matrix::profile() const { return impl_->profile; }
const std::optional<Block>& Matrix::block() const { return impl_->block; }

Block Matrix::window(std::int64_t rows) const {
    Block out;
    for (std::int64_t n = 1; n <= rows; ++n) out.push_back(row(n));
    return out;
}

Flavor parse_flavor(std::string_view text) {
    std::string_view s = detail::trim(text);
    if (s == "bar") return Flavor::OverBar;
    if (s == "tilde") return Flavor::Tilde;
    if (s == "hat") return Flavor::Hat;
    if (s == "arrow") return Flavor::Arrow;
    detail::parse_fail(text, "bar | tilde | hat | arrow");
}

std::string_view to_string(Flavor f) {
    switch (f) {
    case Flavor::OverBar: return "bar";
    case Flavor::Tilde: return "tilde";
    case Flavor::Hat: return "hat";
    case Flavor::Arrow: return "arrow";
    }
    return "?";
}

Scalar derived(const Matrix& a, Flavor flavor, std::int64_t n, std::int64_t k) {
    if (n < 1 || k < 1) throw Error(ErrorCode::Unsupported, "matrix indices must be >= 1");
    Scalar nn(static_cast<long>(n));
    switch (flavor) {
    case Flavor::OverBar:
    case Flavor::Tilde: {
        Scalar acc(0);
        for (std::int64_t j = k; j <= a.row_end(n); ++j) {
            Scalar e = a.entry(n, j);
            if (e == 0) continue;
            Scalar jj(static_cast<long>(j));
            acc += flavor == Flavor::OverBar ? Scalar(e / jj) : Scalar(e * jj);
        }
        return acc;
    }
    case Flavor::Hat:
        if (n == 1) return a.entry(1, k);
        return nn * a.entry(n, k) - (nn - 1) * a.entry(n - 1, k);
    case Flavor::Arrow:
        if (n == 1) return a.entry(1, k);
        return a.entry(n, k) / nn - a.entry(n - 1, k) / (nn - 1);
    }
    return Scalar(0);
}

std::optional<BandProfile> derived_profile(const BandProfile& p, Flavor flavor) {
    BandProfile out;
    const std::int64_t b = p.lower_width();
    const std::int64_t u = p.upper_width();
    if (flavor == Flavor::Hat || flavor == Flavor::Arrow) {
        RationalFunction w = flavor == Flavor::Hat ? RationalFunction::identity() : RationalFunction::reciprocal();
        auto combine = [&](const RationalFunction& own, const RationalFunction& prev) {
            return own * w - (prev * w).shifted(-1);
        };
        for (std::int64_t o = 0; o <= b + 1; ++o) out.lower.push_back(combine(p.at_offset(o), p.at_offset(o - 1)));
        for (std::int64_t j = 1; j <= u; ++j) out.upper.push_back(combine(p.at_offset(-j), p.at_offset(-j - 1)));
        if (p.fill) out.fill = combine(*p.fill, *p.fill);
        out.from_row = p.from_row + 1;
    } else {
        // A fill makes the row tail sums depend on k through harmonic-type sums.
        if (p.fill) return std::nullopt;
        auto weight = [&](std::int64_t o) {  // 1/j or j at column j = n - o
            if (flavor == Flavor::OverBar) return RationalFunction::reciprocal().shifted(-o);
            return RationalFunction::identity() - RationalFunction::constant(Scalar(static_cast<long>(o)));
        };
        std::map<std::int64_t, RationalFunction> cumulative;
        RationalFunction acc;
        for (std::int64_t o = -u; o <= b; ++o) {
            RationalFunction e = p.at_offset(o);
            if (!e.is_zero()) acc = acc + e * weight(o);
            cumulative[o] = acc;
        }
        for (std::int64_t o = 0; o <= b; ++o) out.lower.push_back(cumulative[o]);
        for (std::int64_t j = 1; j <= u; ++j) out.upper.push_back(cumulative[-j]);
        out.fill = cumulative[b];
        out.from_row = p.from_row;
    }
    out.simplify();
    return out;
}

Matrix derived_matrix(const Matrix& a, Flavor flavor) {
    std::string name = std::string(to_string(flavor)) + ":" + a.name();
    if (a.block()) {
        const Block& src = *a.block();
        Block rows;
        std::size_t count = src.size();
        if (count > 0 && (flavor == Flavor::Hat || flavor == Flavor::Arrow)) ++count;
        for (std::size_t i = 0; i < count; ++i) {
            auto n = static_cast<std::int64_t>(i + 1);
            std::int64_t end = a.row_end(n);
            if (flavor == Flavor::Hat || flavor == Flavor::Arrow) end = std::max(end, n > 1 ? a.row_end(n - 1) : 0);
            std::vector<Scalar> row;
            for (std::int64_t k = 1; k <= end; ++k) row.push_back(derived(a, flavor, n, k));
            rows.push_back(std::move(row));
        }
        return Matrix::finite(std::move(rows)).renamed(name);
    }
    std::optional<BandProfile> profile;
    if (a.profile()) profile = derived_profile(*a.profile(), flavor);
    RowEndFn row_end = [a, flavor](std::int64_t n) {
        std::int64_t end = a.row_end(n);
        if ((flavor == Flavor::Hat || flavor == Flavor::Arrow) && n > 1) end = std::max(end, a.row_end(n - 1));
        return end;
    };
    RowFn row;
    if (flavor == Flavor::OverBar || flavor == Flavor::Tilde) {
        row = [a, flavor](std::int64_t n) {
            std::vector<Scalar> out = a.row(n);
            Scalar acc(0);
            for (auto k = static_cast<std::int64_t>(out.size()); k >= 1; --k) {
                Scalar& e = out[static_cast<std::size_t>(k - 1)];
                Scalar kk(static_cast<long>(k));
                if (e != 0) acc += flavor == Flavor::OverBar ? Scalar(e / kk) : Scalar(e * kk);
                e = acc;
            }
            return out;
        };
    }
    return Matrix::general(name, [a, flavor](std::int64_t n, std::int64_t k) { return derived(a, flavor, n, k); },
                           std::move(row_end), std::move(profile), std::move(row));
}

namespace {

constexpr std::string_view matrix_grammar =
    "<operator> | zero | finite:[[..],..] | band:o=rule,... | (bar|tilde|hat|arrow):<matrix>";

Block parse_block(std::string_view text) {
    std::string_view s = detail::trim(text);
    if (s.size() < 2 || s.front() != '[' || s.back() != ']') detail::parse_fail(text, "finite:[[p/q,...],...]");
    std::string_view inner = detail::trim(s.substr(1, s.size() - 2));
    Block rows;
    if (inner.empty()) return rows;
    for (std::string_view r : detail::split_top(inner, ','))
        rows.push_back(detail::parse_scalar_list(r, "finite:[[p/q,...],...]"));
    return rows;
}

Matrix parse_band(std::string_view text) {
    std::map<std::int64_t, RationalFunction> offsets;
    for (std::string_view item : detail::split_top(text, ',')) {
        auto eq = item.find('=');
        if (eq == std::string_view::npos) detail::parse_fail(item, "o=rule with rule n | 1/n | const:c");
        std::int64_t o = detail::parse_int(item.substr(0, eq), "an integer offset");
        if (offsets.count(o)) detail::parse_fail(item, "each offset at most once");
        offsets[o] = parse_rule(item.substr(eq + 1));
    }
    BandProfile p;
    std::int64_t lo = std::min<std::int64_t>(0, offsets.begin()->first);
    std::int64_t hi = std::max<std::int64_t>(0, offsets.rbegin()->first);
    for (std::int64_t o = 0; o <= hi; ++o) p.lower.push_back(offsets.count(o) ? offsets[o] : RationalFunction());
    for (std::int64_t o = -1; o >= lo; --o) p.upper.push_back(offsets.count(o) ? offsets[o] : RationalFunction());
    std::string name = "band:";
    bool first = true;
    for (const auto& [o, rule] : offsets) {
        name += (first ? "" : ",") + std::to_string(o) + "=" + rule_literal(rule);
        first = false;
    }
    p.simplify();
    return Matrix::banded(std::move(name), std::move(p));
}

} // namespace

Matrix parse_matrix(std::string_view text) {
    std::string_view s = detail::trim(text);
    if (s == "zero") return Matrix::zero();
    for (Flavor f : {Flavor::OverBar, Flavor::Tilde, Flavor::Hat, Flavor::Arrow}) {
        std::string prefix = std::string(to_string(f)) + ":";
        std::string_view rest = s;
        if (detail::consume(rest, prefix)) return derived_matrix(parse_matrix(rest), f);
    }
    std::string_view rest = s;
    if (detail::consume(rest, "finite:")) return Matrix::finite(parse_block(rest));
    if (detail::consume(rest, "band:")) {
        if (detail::trim(rest).empty()) detail::parse_fail(text, matrix_grammar);
        return parse_band(rest);
    }
    try {
        return Matrix::from_op(parse_operator(s));
    } catch (const Error& e) {
        if (e.code() != ErrorCode::Parse) throw;
        detail::parse_fail(text, matrix_grammar);
    }
}

} // namespace seqspace
