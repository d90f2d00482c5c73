#pragma once

#include "seqspace/matrix.hpp"
#include "seqspace/space.hpp"
#include "seqspace/verdict.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace seqspace {

enum class Condition {
    SupEntry,                 // sup_{n,k} |a_nk| < inf
    ColumnLimits,             // lim_n a_nk exists for each k
    ColumnLimitsZero,         // lim_n a_nk = 0 for each k
    SupColumnSum,             // sup_k sum_n |a_nk| < inf
    SupPartialColumnSum,      // sup_{k,m} |sum_{n<=m} a_nk| < inf
    ColumnSeriesConverge,     // sum_n a_nk converges for each k
    ColumnSeriesZero,         // sum_n a_nk = 0 for each k
    FiniteSubsetSupForward,   // sup_{N,K} |sum_N sum_K (a_nk - a_{n,k+1})| < inf
    FiniteSubsetSupBackward,  // same with a_nk - a_{n,k-1}, a_{n,0} = 0
    EntryRowLimitZero,        // lim_k a_nk = 0 for each n
};

std::string_view to_string(Condition c);    // identifier
std::string_view formula(Condition c);      // the condition written out

/// Conditions characterising (from:to) for the undecorated pairs with l1 on
/// one side. Throws Unsupported for other pairs.
std::vector<Condition> class_conditions(BaseSpace from, BaseSpace to);

/// Decide one condition. Exact on finite blocks and band profiles; other
/// descriptions get Inconclusive with the trace over the leading probe rows.
Verdict evaluate_condition(const Matrix& a, Condition c, std::int64_t probe);

/// A in (from:to). Pairs involving int_bv or d_bv go through reduce_and_check.
Verdict class_check(const Matrix& a, SpaceId from, SpaceId to, std::int64_t probe);

struct ClassSpec {
    SpaceId from;
    SpaceId to;
};

ClassSpec parse_class(std::string_view text);  // "<space>:<space>"
std::string to_string(const ClassSpec& c);

/// (int_bv:Y) via bar, (d_bv:Y) via tilde, (Y:int_bv) via hat, (Y:d_bv) via arrow.
Verdict reduce_and_check(const Matrix& a, const ClassSpec& cls, std::int64_t probe);

enum class CorollaryFamily { IntBvSource, DBvSource, IntBvTarget, DBvTarget };

CorollaryFamily parse_corollary_family(std::string_view text);  // source:int_bv | source:d_bv | target:...
std::string_view to_string(CorollaryFamily f);

// Items in order; each names the space Y of the class.
std::vector<std::string> corollary_items(CorollaryFamily f);

/// Evaluate one corollary item from its own (derived matrix, conditions)
/// table. `item` is a roman numeral or the space Y.
Verdict corollary_suite(CorollaryFamily f, const Matrix& a, std::string_view item, std::int64_t probe);

} // namespace seqspace
