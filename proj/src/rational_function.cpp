#include "seqspace/rational_function.hpp"

#include "seqspace/error.hpp"

#include <algorithm>
#include <utility>

namespace seqspace {

Polynomial::Polynomial(std::vector<Scalar> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::constant(Scalar c) { return Polynomial(std::vector<Scalar>{std::move(c)}); }

Polynomial Polynomial::monomial(Scalar c, int degree) {
    std::vector<Scalar> v(static_cast<std::size_t>(degree + 1), Scalar(0));
    v.back() = std::move(c);
    return Polynomial(std::move(v));
}

void Polynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Scalar Polynomial::coeff(int i) const {
    if (i < 0 || i > degree()) return Scalar(0);
    return coeffs_[static_cast<std::size_t>(i)];
}

Scalar Polynomial::operator()(const Scalar& n) const {
    Scalar acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * n + *it;
    return acc;
}

Polynomial Polynomial::derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<Scalar> d(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * Scalar(static_cast<long>(i));
    return Polynomial(std::move(d));
}

Polynomial Polynomial::shifted(const Scalar& s) const {
    // Horner in the polynomial ring: p(n+s) = (...(c_d (n+s) + c_{d-1})(n+s) + ...)
    Polynomial base(std::vector<Scalar>{s, Scalar(1)});
    Polynomial acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * base + constant(*it);
    return acc;
}

Scalar Polynomial::root_bound() const {
    if (degree() <= 0) return Scalar(0);
    Scalar m(0);
    for (int i = 0; i < degree(); ++i) m = std::max(m, absolute(coeffs_[static_cast<std::size_t>(i)] / leading()));
    return m + 1;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Scalar> v(std::max(a.coeffs_.size(), b.coeffs_.size()), Scalar(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) v[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) v[i] += b.coeffs_[i];
    return Polynomial(std::move(v));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<Scalar> v(std::max(a.coeffs_.size(), b.coeffs_.size()), Scalar(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) v[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) v[i] -= b.coeffs_[i];
    return Polynomial(std::move(v));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Scalar> v(a.coeffs_.size() + b.coeffs_.size() - 1, Scalar(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(std::move(v));
}

void Polynomial::divmod(const Polynomial& a, const Polynomial& b, Polynomial& q, Polynomial& r) {
    if (b.is_zero()) throw Error(ErrorCode::Unsupported, "polynomial division by zero");
    std::vector<Scalar> quot(static_cast<std::size_t>(std::max(0, a.degree() - b.degree() + 1)), Scalar(0));
    Polynomial rem = a;
    while (!rem.is_zero() && rem.degree() >= b.degree()) {
        int shift = rem.degree() - b.degree();
        Scalar factor = rem.leading() / b.leading();
        quot[static_cast<std::size_t>(shift)] = factor;
        rem = rem - monomial(factor, shift) * b;
    }
    q = Polynomial(std::move(quot));
    r = std::move(rem);
}

Polynomial Polynomial::gcd(Polynomial a, Polynomial b) {
    while (!b.is_zero()) {
        Polynomial q, r;
        divmod(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    Scalar lead = a.leading();
    for (auto& c : a.coeffs_) c /= lead;
    return a;
}

std::string Polynomial::to_string(char var) const {
    if (is_zero()) return "0";
    std::string out;
    for (int i = degree(); i >= 0; --i) {
        const Scalar& c = coeffs_[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        Scalar mag = absolute(c);
        if (out.empty()) out += c < 0 ? "-" : "";
        else out += c < 0 ? " - " : " + ";
        bool show = i == 0 || mag != 1;
        if (show) out += seqspace::to_string(mag);
        if (i > 0) {
            if (show) out += "*";
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

RationalFunction::RationalFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw Error(ErrorCode::Unsupported, "rational function with zero denominator");
    normalize();
}

void RationalFunction::normalize() {
    if (num_.is_zero()) {
        den_ = Polynomial::constant(Scalar(1));
        return;
    }
    Polynomial g = Polynomial::gcd(num_, den_);
    if (g.degree() > 0) {
        Polynomial q, r;
        Polynomial::divmod(num_, g, q, r);
        num_ = q;
        Polynomial::divmod(den_, g, q, r);
        den_ = q;
    }
    Scalar lead = den_.leading();
    if (lead != 1) {
        Polynomial inv = Polynomial::constant(1 / lead);
        num_ = num_ * inv;
        den_ = den_ * inv;
    }
}

RationalFunction RationalFunction::constant(Scalar c) {
    return RationalFunction(Polynomial::constant(std::move(c)), Polynomial::constant(Scalar(1)));
}

RationalFunction RationalFunction::identity() { return monomial(Scalar(1), 1); }

RationalFunction RationalFunction::reciprocal() { return monomial(Scalar(1), -1); }

RationalFunction RationalFunction::monomial(Scalar c, std::int64_t power) {
    if (power >= 0)
        return RationalFunction(Polynomial::monomial(std::move(c), static_cast<int>(power)),
                                Polynomial::constant(Scalar(1)));
    return RationalFunction(Polynomial::constant(std::move(c)), Polynomial::monomial(Scalar(1), static_cast<int>(-power)));
}

Scalar RationalFunction::operator()(const Scalar& n) const {
    Scalar d = den_(n);
    if (d == 0) throw Error(ErrorCode::Unsupported, "rational function evaluated at a pole");
    return num_(n) / d;
}

Scalar RationalFunction::at(std::int64_t n) const { return (*this)(Scalar(static_cast<long>(n))); }

std::optional<Scalar> RationalFunction::limit() const {
    if (is_zero()) return Scalar(0);
    if (decay() < 0) return std::nullopt;
    if (decay() > 0) return Scalar(0);
    return num_.leading() / den_.leading();
}

int RationalFunction::eventual_sign() const {
    if (is_zero()) return 0;
    return sgn(num_.leading()) * sgn(den_.leading());
}

std::int64_t RationalFunction::stable_from() const {
    // Sign changes need a root of num or den; monotonicity changes need a
    // root of num' den - num den'.
    Polynomial slope = num_.derivative() * den_ - num_ * den_.derivative();
    Scalar bound = std::max({num_.root_bound(), den_.root_bound(), slope.root_bound()});
    return std::max<std::int64_t>(1, ceil_to_int(bound) + 1);
}

RationalFunction RationalFunction::shifted(std::int64_t s) const {
    Scalar sh(static_cast<long>(s));
    return RationalFunction(num_.shifted(sh), den_.shifted(sh));
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
    return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a) {
    return RationalFunction(Polynomial() - a.num_, a.den_);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero() || b.is_zero()) return {};
    return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

std::string RationalFunction::to_string(char var) const {
    if (den_.degree() == 0) return num_.to_string(var);
    return "(" + num_.to_string(var) + ")/(" + den_.to_string(var) + ")";
}

std::optional<Scalar> sup_abs(const RationalFunction& f, std::int64_t from) {
    if (f.is_zero()) return Scalar(0);
    if (!f.bounded_at_infinity()) return std::nullopt;
    std::int64_t stable = std::max(from, f.stable_from());
    Scalar best(0);
    for (std::int64_t n = from; n <= stable; ++n) best = std::max(best, absolute(f.at(n)));
    // Monotone past `stable`, so |f| there is bounded by max(|f(stable)|, |lim|).
    best = std::max(best, absolute(*f.limit()));
    return best;
}

} // namespace seqspace
