#pragma once

#include "seqspace/scalar.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace seqspace {

enum class Decoration { None, Integrated, Differentiated };

// Display kind of a closed-form family. Every family is stored as the
// single shape c * k^p * r^k; the kind is recovered from (p, r).
enum class FamilyKind { Constant, PowerLaw, Geometric, Alternating, PowerGeometric };

struct Family {
    Scalar coeff;          // c
    std::int64_t power{};  // p
    Scalar ratio{1};       // r

    FamilyKind kind() const;
    bool is_zero() const { return coeff == 0 || ratio == 0; }
    Scalar term(std::int64_t k) const;
};

/// A one-indexed sequence of exact scalars.
///
/// Either finitely supported (values x_1..x_m, zero beyond m) or a closed-form
/// family with an optional finite prefix that overrides the first terms.
class Seq {
public:
    Seq() = default;

    static Seq finite(std::vector<Scalar> values);
    static Seq unit(std::int64_t k);  // e^(k)
    static Seq constant(Scalar c);
    static Seq power_law(Scalar c, std::int64_t p);
    static Seq geometric(Scalar c, Scalar r);  // requires |r| < 1
    static Seq alternating(Scalar c);          // c * (-1)^k
    static Seq power_geometric(Scalar c, std::int64_t p, Scalar r);

    // Replace the first prefix.size() terms. Only meaningful for families;
    // for finite sequences the values are overwritten in place.
    Seq with_prefix(std::vector<Scalar> prefix) const;

    bool is_finite() const { return !family_.has_value(); }
    const std::optional<Family>& family() const { return family_; }

    // Finite: the stored values. Family: the prefix override.
    const std::vector<Scalar>& values() const { return values_; }

    // Finite: m, the length of the stored values. Family: prefix length.
    std::size_t support_bound() const { return values_.size(); }

    Scalar term(std::int64_t k) const;
    std::vector<Scalar> head(std::int64_t n) const;  // x_1..x_n

    friend bool structurally_equal(const Seq& a, const Seq& b);

private:
    std::vector<Scalar> values_;
    std::optional<Family> family_;
};

Scalar term(const Seq& s, std::int64_t k);
Seq decorate(const Seq& s, Decoration d);
Seq truncate(const Seq& s, std::int64_t n);

// Termwise equality on indices 1..bound.
bool equal_up_to(const Seq& a, const Seq& b, std::int64_t bound);

// Literal grammar: finite:[p/q,...] | const:c | powerlaw:c,p | geom:c,r |
// alt:c | pgeom:c,p,r, optionally followed by ;prefix:[...].
Seq parse_seq(std::string_view text);
std::string to_literal(const Seq& s);

std::string_view to_string(FamilyKind kind);
std::string_view to_string(Decoration d);

} // namespace seqspace
