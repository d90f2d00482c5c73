#pragma once

#include "seqspace/scalar.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace seqspace {

enum class Status { Member, NonMember, Inconclusive };

std::string_view to_string(Status s);

struct TracePoint {
    std::int64_t index;
    Scalar value;
};

/// Three-valued result with the evidence behind it.
///
/// Member and NonMember always carry a certificate; Inconclusive carries the
/// probe-bounded trace. `checks` holds named sub-verdicts (one per condition).
struct Verdict {
    Status status = Status::Inconclusive;
    std::string rule;
    std::optional<Scalar> value;
    std::string certificate;
    std::vector<TracePoint> trace;
    std::vector<std::pair<std::string, Verdict>> checks;

    static Verdict member(std::string rule, std::optional<Scalar> value, std::string certificate);
    static Verdict non_member(std::string rule, std::string certificate);
    static Verdict inconclusive(std::string rule, std::string certificate);
};

// Conjunction over sub-verdicts: any NonMember wins, then any Inconclusive.
Status conjunction(const std::vector<std::pair<std::string, Verdict>>& checks);

// Indices 1, 2, 4, ... below probe, then probe itself.
std::vector<std::int64_t> trace_indices(std::int64_t probe);

} // namespace seqspace
