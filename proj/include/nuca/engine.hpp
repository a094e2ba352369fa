#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "nuca/core.hpp"
#include "nuca/rules.hpp"

namespace nuca {

struct Trace {
    std::int64_t a = 0;
    std::int64_t b = 0;           // window [a, b], inclusive
    std::vector<Word> rows;       // rows[t] = H^t(x) restricted to [a, b]
};

struct OrbitReport {
    enum class Outcome { UltimatelyPeriodic, BudgetExceeded } outcome =
        Outcome::BudgetExceeded;
    std::int64_t preperiod = 0;   // valid iff UltimatelyPeriodic
    std::int64_t period = 1;
    std::int64_t steps = 0;       // steps actually taken
    std::int64_t maxCenterWidth = 0;
};

// Exact global step: sample(step(spec,x), i) = rule_at(spec,i) on the radius-r
// window of x at i, for every i. Result is normalized.
EpConfig step(const NuCaSpec& spec, const EpConfig& x);

Trace trace(const NuCaSpec& spec, const EpConfig& x, std::int64_t a, std::int64_t b, int steps);

// Cycle detection over canonical forms. Never truncates: growth past
// maxCenterWidth reports BudgetExceeded instead of guessing.
OrbitReport orbit_analyze(const NuCaSpec& spec, const EpConfig& x, int maxSteps,
                          std::int64_t maxCenterWidth);

// Builds the normalized configuration whose value at i is eval(i), given that
// eval is PL-periodic at or below tl and PR-periodic at or above tr.
EpConfig assemble_config(Alphabet alphabet, const std::function<Symbol(std::int64_t)>& eval,
                         std::int64_t tl, std::int64_t PL, std::int64_t tr, std::int64_t PR);

std::string format_trace(const Trace& tr, const Alphabet& alphabet);

}  // namespace nuca
