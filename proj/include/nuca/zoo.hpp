#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nuca/core.hpp"
#include "nuca/dynamics.hpp"
#include "nuca/rules.hpp"

// Catalog of small reference systems with recorded verdicts, plus the
// word-rewriting and cell-column checks behind the sensitivity analysis of
// the pinned three-symbol systems.
//
// Not representable here: global maps that read a fixed absolute cell from
// every position (image_i = x_0 for all i).  Such a map needs unbounded
// radius at cells far from 0, so it has no radius-uniform normal form.

namespace nuca::zoo {

// Three-symbol cycle-chasing rule: on center 0 a neighboring 1 promotes to 1;
// on center 1 a neighboring 2 promotes to 2; on center 2 a neighboring 1
// resets to 0.
LocalRule cyclic3_rule();

// Three-symbol spreading rule: any 2 in the neighborhood wins, otherwise the
// right neighbor is copied (restricted to {0,1} this is the left shift).
LocalRule spread2_rule();

struct ZooEntry {
    std::string name;
    NuCaSpec spec;
    // Recorded expected verdicts; unset fields are skipped by verify_entry.
    std::optional<bool> surjective;
    std::optional<bool> injective;
    std::optional<NuCaClassification::Kind> classification;
    std::string note;
};

const std::vector<ZooEntry>& zoo_catalog();
const ZooEntry* zoo_find(const std::string& name);  // nullptr when absent

struct EntryCheck {
    std::string name;
    bool ok = false;
    std::string detail;
};

struct EntryReport {
    std::string entry;
    std::vector<EntryCheck> checks;
    bool ok() const;
};

// Runs the recorded-verdict suite: decision procedures (on a block-packed
// view when the tails are not period 1), one-step witness replay for
// non-injectivity, and the classifier.
EntryReport verify_entry(const ZooEntry& e);

// Deterministic rewriting system on words over {0,1,2} with a mode bit; every
// state eventually reaches (empty, 1).  f below is cyclic3_rule extended to
// words, shrinking length by 2 per application.
struct RewriteState {
    Word word;
    int flag = 0;

    auto operator<=>(const RewriteState&) const = default;
};

// Exactly one rule applies per state:
//   (u0,0) -> (u,0)        (u0,1) -> (f(1u0),1)
//   (u1,0) -> (u,1)        (u1,1) -> (u,1)
//   (u2,0) -> (f(1u20),0)  (u2,1) -> (f(1u2),0)
//   (empty,.) -> (empty,1)
RewriteState rewrite_step(const RewriteState& s);

// Steps until (empty, 1); returns the step count, or nullopt past maxSteps.
std::optional<std::int64_t> rewrite_run(RewriteState s, std::int64_t maxSteps);

// Iterates w <- f(1w0) from w = u2 until w is all ones (the iteration's
// fixpoint); returns the iteration count, or nullopt past maxSteps.
std::optional<std::int64_t> ones_fixpoint_steps(const Word& u, std::int64_t maxSteps);

// No factor of w lies in {01, 12, 20, 22}.
bool forbidden_free(const Word& w);

// One-sided variant on a configuration: no such factor in x_[i, inf); exact
// via the center plus two right-tail periods.
bool forbidden_free_from(const EpConfig& x, std::int64_t i);

// Under the cyclic3 system with cell 0 pinned to 1: checks along the orbit
// that factor-freeness of y_[i+t, inf) survives one step to y'_[i+t+1, inf).
bool propagation_check(const EpConfig& x, std::int64_t i, int steps);

// Simulates spec from 0*|u@0|0* and returns the least n0 <= horizon such that
// cell 1 holds the value 1 at every time in (n0, n0+window]; nullopt if no
// such n0 exists within the horizon.
std::optional<std::int64_t> cell_one_settles(const NuCaSpec& spec, const Word& u,
                                             std::int64_t horizon, std::int64_t window);

// Simulates spec from 0*|u@0|2* and returns the least t in (after, horizon]
// at which cell 1 holds the value 2; nullopt if none.
std::optional<std::int64_t> cell_two_recurs(const NuCaSpec& spec, const Word& u,
                                            std::int64_t after, std::int64_t horizon);

}  // namespace nuca::zoo
