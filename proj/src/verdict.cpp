#include "seqspace/verdict.hpp"

#include <utility>

namespace seqspace {

std::string_view to_string(Status s) {
    switch (s) {
    case Status::Member: return "Member";
    case Status::NonMember: return "NonMember";
    case Status::Inconclusive: return "Inconclusive";
    }
    return "?";
}

Verdict Verdict::member(std::string rule, std::optional<Scalar> value, std::string certificate) {
    Verdict v;
    v.status = Status::Member;
    v.rule = std::move(rule);
    v.value = std::move(value);
    v.certificate = std::move(certificate);
    return v;
}

Verdict Verdict::non_member(std::string rule, std::string certificate) {
    Verdict v;
    v.status = Status::NonMember;
    v.rule = std::move(rule);
    v.certificate = std::move(certificate);
    return v;
}

Verdict Verdict::inconclusive(std::string rule, std::string certificate) {
    Verdict v;
    v.status = Status::Inconclusive;
    v.rule = std::move(rule);
    v.certificate = std::move(certificate);
    return v;
}

Status conjunction(const std::vector<std::pair<std::string, Verdict>>& checks) {
    bool open = false;
    for (const auto& [name, v] : checks) {
        if (v.status == Status::NonMember) return Status::NonMember;
        if (v.status == Status::Inconclusive) open = true;
    }
    return open ? Status::Inconclusive : Status::Member;
}

std::vector<std::int64_t> trace_indices(std::int64_t probe) {
    std::vector<std::int64_t> out;
    for (std::int64_t i = 1; i < probe; i *= 2) out.push_back(i);
    out.push_back(probe);
    return out;
}

} // namespace seqspace
