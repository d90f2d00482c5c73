#pragma once

#include "seqspace/scalar.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace seqspace {

// Polynomial in the row index n with rational coefficients, lowest degree first.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Scalar> coeffs);
    static Polynomial constant(Scalar c);
    static Polynomial monomial(Scalar c, int degree);

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }  // -1 for zero
    const Scalar& leading() const { return coeffs_.back(); }
    const std::vector<Scalar>& coeffs() const { return coeffs_; }
    Scalar coeff(int i) const;

    Scalar operator()(const Scalar& n) const;

    Polynomial derivative() const;
    Polynomial shifted(const Scalar& s) const;  // p(n + s)

    // Every real root r satisfies |r| < bound (Cauchy). Zero polynomial: 0.
    Scalar root_bound() const;

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

    // Euclidean division over Q.
    static void divmod(const Polynomial& a, const Polynomial& b, Polynomial& q, Polynomial& r);
    static Polynomial gcd(Polynomial a, Polynomial b);  // monic, or zero

    std::string to_string(char var = 'n') const;

private:
    void trim();
    std::vector<Scalar> coeffs_;
};

/// Ratio of polynomials in n, kept with monic denominator and no common factor.
class RationalFunction {
public:
    RationalFunction() : num_(), den_(Polynomial::constant(Scalar(1))) {}
    RationalFunction(Polynomial num, Polynomial den);
    static RationalFunction constant(Scalar c);
    static RationalFunction identity();    // n
    static RationalFunction reciprocal();  // 1/n
    static RationalFunction monomial(Scalar c, std::int64_t power);  // c n^power, any sign of power

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    Scalar operator()(const Scalar& n) const;
    Scalar at(std::int64_t n) const;

    // deg(den) - deg(num); meaningless for zero.
    int decay() const { return den_.degree() - num_.degree(); }
    bool bounded_at_infinity() const { return is_zero() || decay() >= 0; }
    bool summable() const { return is_zero() || decay() >= 2; }
    std::optional<Scalar> limit() const;  // nullopt when unbounded
    int eventual_sign() const;

    // For n >= stable_from(): no poles, constant sign, monotone.
    std::int64_t stable_from() const;

    RationalFunction shifted(std::int64_t s) const;  // f(n + s)

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator-(const RationalFunction& a);
    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    std::string to_string(char var = 'n') const;

private:
    void normalize();
    Polynomial num_;
    Polynomial den_;
};

// sup_{n >= from} |f(n)|, exact; nullopt when unbounded. f must have no poles
// at integers >= from.
std::optional<Scalar> sup_abs(const RationalFunction& f, std::int64_t from);

} // namespace seqspace
