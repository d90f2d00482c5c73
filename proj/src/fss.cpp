#include "fss.hpp"

#include <algorithm>
#include <map>

namespace seqspace::detail {

namespace {

struct Prepared {
    Scalar first;  // entry in column 1
    std::vector<std::pair<std::int64_t, Scalar>> rest;
};

Scalar positive(const Scalar& x) { return x > 0 ? x : Scalar(0); }

} // namespace

Scalar total_abs(const std::vector<SparseRow>& rows) {
    Scalar acc(0);
    for (const auto& r : rows)
        for (const auto& [k, v] : r.entries) acc += absolute(v);
    return acc;
}

std::optional<Scalar> finite_subset_sup(const std::vector<SparseRow>& rows, int max_width) {
    std::vector<Prepared> only_first;
    std::map<std::int64_t, std::vector<Prepared>> by_end;  // keyed by last column >= 2
    int width = 1;
    std::int64_t last_col = 1;
    for (const auto& r : rows) {
        Prepared p;
        for (const auto& [k, v] : r.entries) {
            if (v == 0) continue;
            if (k == 1) p.first = v;
            else p.rest.emplace_back(k, v);
        }
        if (p.rest.empty()) {
            if (p.first != 0) only_first.push_back(std::move(p));
            continue;
        }
        std::int64_t lo = p.rest.front().first;
        std::int64_t hi = p.rest.back().first;
        if (hi - lo + 1 > max_width) return std::nullopt;
        width = std::max(width, static_cast<int>(hi - lo + 1));
        last_col = std::max(last_col, hi);
        by_end[hi].push_back(std::move(p));
    }

    const std::size_t masks = std::size_t{1} << width;
    const std::size_t states = masks * 2;  // mask * 2 + bit of column 1
    Scalar best(0);
    std::vector<Scalar> cur(states), next(states), gain(states);
    std::vector<char> live(states), next_live(states);
    for (int sigma : {1, -1}) {
        std::fill(live.begin(), live.end(), 0);
        for (std::size_t b1 = 0; b1 < 2; ++b1) {
            cur[b1] = 0;
            for (const auto& p : only_first)
                if (b1) cur[b1] += positive(sigma * p.first);
            live[b1] = 1;
        }
        for (std::int64_t c = 2; c <= last_col; ++c) {
            auto ending = by_end.find(c);
            // gain of the rows ending at c, per (new mask, column-1 bit)
            for (std::size_t t = 0; t < states && ending != by_end.end(); ++t) {
                gain[t] = 0;
                std::size_t nm = t >> 1U;
                for (const auto& p : ending->second) {
                    Scalar r = (t & 1U) ? p.first : Scalar(0);
                    for (const auto& [k, e] : p.rest)
                        if ((nm >> static_cast<std::size_t>(c - k)) & 1U) r += e;
                    gain[t] += positive(sigma * r);
                }
            }
            std::fill(next_live.begin(), next_live.end(), 0);
            for (std::size_t s = 0; s < states; ++s) {
                if (!live[s]) continue;
                std::size_t b1 = s & 1U;
                std::size_t mask = s >> 1U;
                for (std::size_t bit = 0; bit < 2; ++bit) {
                    std::size_t t = ((((mask << 1U) | bit) & (masks - 1)) << 1U) | b1;
                    if (!next_live[t]) {
                        next[t] = cur[s];
                        next_live[t] = 1;
                    } else if (next[t] < cur[s]) {
                        next[t] = cur[s];
                    }
                }
            }
            if (ending != by_end.end())
                for (std::size_t t = 0; t < states; ++t)
                    if (next_live[t] && gain[t] != 0) next[t] += gain[t];
            std::swap(cur, next);
            std::swap(live, next_live);
        }
        for (std::size_t s = 0; s < states; ++s)
            if (live[s] && cur[s] > best) best = cur[s];
    }
    return best;
}

} // namespace seqspace::detail
