#pragma once

#include "seqspace/scalar.hpp"
#include "seqspace/triangle.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace seqspace {

// rows[n-1][k-1]; entries outside the ragged rows are zero.
using Block = std::vector<std::vector<Scalar>>;

using RowEndFn = std::function<std::int64_t(std::int64_t n)>;
// Optional fast path producing columns 1..row_end(n) at once.
using RowFn = std::function<std::vector<Scalar>(std::int64_t n)>;

/// General matrix description for class tests: not necessarily triangular,
/// but every row has finite support.
///
/// Carries up to two exact structures besides the entry rule: a finite
/// block (all other entries zero) or a band profile valid from some row on.
class Matrix {
public:
    static Matrix from_op(const TriangleOp& op);
    static Matrix zero();
    static Matrix finite(Block rows);
    static Matrix banded(std::string name, BandProfile profile);  // profile must start at row 1
    static Matrix general(std::string name, EntryFn entry, RowEndFn row_end,
                          std::optional<BandProfile> profile = std::nullopt, RowFn row = nullptr);

    Scalar entry(std::int64_t n, std::int64_t k) const;
    // Last column that can be nonzero in row n; 0 for an empty row.
    std::int64_t row_end(std::int64_t n) const;
    std::vector<Scalar> row(std::int64_t n) const;  // columns 1..row_end(n)

    const std::string& name() const;
    Matrix renamed(std::string name) const;
    const std::optional<BandProfile>& profile() const;
    const std::optional<Block>& block() const;

    // Rows 1..rows as a block (columns up to each row's end).
    Block window(std::int64_t rows) const;

    struct Impl;

private:
    explicit Matrix(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

enum class Flavor { OverBar, Tilde, Hat, Arrow };

Flavor parse_flavor(std::string_view text);  // bar | tilde | hat | arrow
std::string_view to_string(Flavor f);

/// Entry of a derived matrix straight from the definition:
///   OverBar  sum_{j>=k} a_nj / j        Tilde  sum_{j>=k} j a_nj
///   Hat      n a_nk - (n-1) a_{n-1,k}   Arrow  a_nk / n - a_{n-1,k} / (n-1)
/// Hat and Arrow take only the row's own term at n = 1.
Scalar derived(const Matrix& a, Flavor flavor, std::int64_t n, std::int64_t k);

/// Derived matrix, keeping a finite block or band profile symbolic when the
/// derivation allows it.
Matrix derived_matrix(const Matrix& a, Flavor flavor);

// Symbolic counterparts on profiles; nullopt when not expressible.
std::optional<BandProfile> derived_profile(const BandProfile& p, Flavor flavor);

// <operator literal> | zero | finite:[[..],[..]] | band:o=rule,... |
// (bar|tilde|hat|arrow):<matrix>
Matrix parse_matrix(std::string_view text);

} // namespace seqspace
