#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace seqspace {

// splitmix64; identical streams on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next();
    // Uniform on [lo, hi] by rejection, so no modulo bias.
    std::int64_t uniform(std::int64_t lo, std::int64_t hi);

private:
    std::uint64_t state_;
};

// Seed of trial `index` in a run started from `seed`.
std::uint64_t trial_seed(std::uint64_t seed, std::int64_t index);

struct SuiteFailure {
    std::string check;
    std::int64_t trial;  // 0-based; rerun with the same --seed and --trials trial+1
    std::uint64_t seed;  // per-trial seed derived from the run seed
    std::string detail;
};

struct SuiteSummary {
    std::string name;
    std::int64_t trials = 0;
    std::int64_t checks = 0;
    std::vector<SuiteFailure> failures;
    double wall_seconds = 0;

    bool passed() const { return failures.empty(); }
};

const std::vector<std::string>& suite_names();

// Throws UnknownSuite for names outside suite_names().
SuiteSummary verify_suite(std::string_view name, std::int64_t trials, std::int64_t probe, std::uint64_t seed);

} // namespace seqspace
