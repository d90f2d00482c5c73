#include "seqspace/scalar.hpp"

#include "parse_util.hpp"

#include <charconv>

namespace seqspace {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::NonComputableRow: return "NonComputableRow";
    case ErrorCode::SingularDiagonal: return "SingularDiagonal";
    case ErrorCode::InfiniteRowSupport: return "InfiniteRowSupport";
    case ErrorCode::NotSummable: return "NotSummable";
    case ErrorCode::NotNormable: return "NotNormable";
    case ErrorCode::RowNotInDual: return "RowNotInDual";
    case ErrorCode::UnknownSuite: return "UnknownSuite";
    case ErrorCode::Unsupported: return "Unsupported";
    }
    return "Unknown";
}

Scalar make_scalar(std::int64_t num, std::int64_t den) {
    if (den == 0) throw Error(ErrorCode::Parse, "zero denominator");
    Scalar x(mpz_class(std::to_string(num)), mpz_class(std::to_string(den)));
    x.canonicalize();
    return x;
}

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char ch : s)
        if (ch < '0' || ch > '9') return false;
    return true;
}

} // namespace

Scalar parse_scalar(std::string_view text) {
    constexpr std::string_view grammar = "a rational p or p/q";
    std::string_view s = detail::trim(text);
    bool negative = false;
    std::string_view body = s;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    auto slash = body.find('/');
    std::string_view num = body.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) detail::parse_fail(text, grammar);
    mpz_class n{std::string(num)};
    mpz_class d{std::string(den)};
    if (d == 0) detail::parse_fail(text, "a nonzero denominator");
    if (negative) n = -n;
    Scalar x(n, d);
    x.canonicalize();
    return x;
}

std::string to_string(const Scalar& x) { return x.get_str(); }

Scalar absolute(const Scalar& x) {
    Scalar r = x;
    if (r < 0) r = -r;
    return r;
}

Scalar power(const Scalar& base, std::int64_t exponent) {
    if (exponent == 0) return Scalar(1);
    if (exponent < 0) {
        if (base == 0) throw Error(ErrorCode::Unsupported, "0 raised to a negative power");
        Scalar inv = 1 / base;
        return power(inv, -exponent);
    }
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(exponent));
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(exponent));
    Scalar r(num, den);
    r.canonicalize();
    return r;
}

Scalar power_of_index(std::int64_t k, std::int64_t exponent) {
    return power(make_scalar(k), exponent);
}

Scalar binomial(std::int64_t n, std::int64_t k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Scalar(r);
}

std::int64_t ceil_to_int(const Scalar& x) {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    if (!q.fits_slong_p()) throw Error(ErrorCode::Unsupported, "integer bound out of range");
    return q.get_si();
}

namespace detail {

std::int64_t parse_int(std::string_view text, std::string_view grammar) {
    std::string_view s = trim(text);
    std::int64_t v{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) parse_fail(text, grammar);
    return v;
}

std::vector<Scalar> parse_scalar_list(std::string_view text, std::string_view grammar) {
    std::string_view s = trim(text);
    if (s.size() < 2 || s.front() != '[' || s.back() != ']') parse_fail(text, grammar);
    s = trim(s.substr(1, s.size() - 2));
    std::vector<Scalar> out;
    if (s.empty()) return out;
    for (auto item : split_top(s, ',')) out.push_back(parse_scalar(item));
    return out;
}

std::string join_scalars(const std::vector<Scalar>& xs, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += sep;
        out += to_string(xs[i]);
    }
    return out;
}

} // namespace detail
} // namespace seqspace
