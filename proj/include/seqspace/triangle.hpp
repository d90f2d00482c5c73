#pragma once

#include "seqspace/rational_function.hpp"
#include "seqspace/scalar.hpp"
#include "seqspace/sequence.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace seqspace {

/// Symbolic shape of a banded (or banded-plus-fill) matrix for rows n >= from_row.
///
/// lower[o] is the entry at (n, n - o), upper[o - 1] the entry at (n, n + o),
/// and fill, when present, every entry (n, k) with k < n - (lower.size() - 1).
/// Entries only exist for k >= 1.
struct BandProfile {
    std::vector<RationalFunction> lower;
    std::vector<RationalFunction> upper;
    std::optional<RationalFunction> fill;
    std::int64_t from_row = 1;

    std::int64_t lower_width() const { return static_cast<std::int64_t>(lower.size()) - 1; }
    std::int64_t upper_width() const { return static_cast<std::int64_t>(upper.size()); }

    // Entry at offset o = n - k: lower for 0..b, upper for negative o, fill beyond b.
    RationalFunction at_offset(std::int64_t o) const;
    Scalar entry(std::int64_t n, std::int64_t k) const;

    // Drop trailing zero offsets and a zero fill.
    void simplify();
};

enum class OpKind { Band, ClosedForm, Diagonal, Product };

using EntryFn = std::function<Scalar(std::int64_t n, std::int64_t k)>;

/// Infinite lower-triangular matrix with exactly computable entries.
///
/// Values are immutable and cheap to copy; the only mutable state is the row
/// memo of an inverse computed by forward substitution, which is guarded.
class TriangleOp {
public:
    static TriangleOp delta();
    static TriangleOp gamma();
    static TriangleOp sigma();
    static TriangleOp identity();
    static TriangleOp gamma_inverse();  // 1/n for k <= n
    static TriangleOp sigma_inverse();  // n for k <= n

    // offsets[o] gives the entry at (n, n - o).
    static TriangleOp band(std::string name, std::vector<RationalFunction> offsets);
    static TriangleOp diagonal(std::string name, RationalFunction rule);
    static TriangleOp diagonal(const Seq& alpha);  // D_alpha
    static TriangleOp closed_form(std::string name, EntryFn entry, std::optional<std::int64_t> bandwidth,
                                  std::optional<BandProfile> profile = std::nullopt);
    static TriangleOp product(const TriangleOp& left, const TriangleOp& right);

    Scalar entry(std::int64_t n, std::int64_t k) const;
    OpKind kind() const;
    const std::string& name() const;  // operator literal
    std::optional<std::int64_t> bandwidth() const;
    const std::optional<BandProfile>& profile() const;

    // First column that can be nonzero in row n.
    std::int64_t row_begin(std::int64_t n) const;
    bool is_triangle_on(std::int64_t n_max) const;

    struct Impl;

private:
    explicit TriangleOp(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

/// (Ax)_n; finite because rows are lower-triangular.
Scalar apply(const TriangleOp& a, const Seq& x, std::int64_t n);
Seq apply_block(const TriangleOp& a, const Seq& x, std::int64_t n_max);

Seq gamma_transform(const Seq& x, std::int64_t n_max);
Seq sigma_transform(const Seq& x, std::int64_t n_max);

/// Two-sided inverse. Known closed forms are used for gamma and sigma and
/// cross-checked against forward substitution on the leading n_max block.
TriangleOp invert(const TriangleOp& a, std::int64_t n_max);

/// Plain forward substitution, memoised row by row.
TriangleOp invert_by_substitution(const TriangleOp& a, std::int64_t n_max);

Scalar compose(const TriangleOp& a, const TriangleOp& b, std::int64_t n, std::int64_t k);

/// sum_{j >= k} a_nj (row n is finite).
Scalar row_tail_sum(const TriangleOp& a, std::int64_t n, std::int64_t k);

// delta | gamma | sigma | identity | diag:(n|1/n|const:c) | prod:A,B |
// closed:(gamma_inv|sigma_inv)
TriangleOp parse_operator(std::string_view text);

// Shared by the operator and matrix grammars.
RationalFunction parse_rule(std::string_view text);
std::string rule_literal(const RationalFunction& rule);

// Symbolic product of two lower-triangular profiles; nullopt when either has
// upper offsets or a fill that the product cannot express.
std::optional<BandProfile> multiply_profiles(const BandProfile& a, const BandProfile& b);

} // namespace seqspace
