#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "nuca/core.hpp"
#include "nuca/rules.hpp"

namespace nuca {

// Witness that u pins a width-s column against every rule assignment agreeing
// with f on u's span: whatever the surrounding cells do, column [offset,
// offset+s) runs through the same eventually periodic value sequence.
struct BlockingCertificate {
    Word word;                          // u
    std::int64_t width = 0;             // s
    std::int64_t offset = 0;            // least certified d in [0, |u|-s]
    std::vector<Word> columnPreperiod;  // column value at t = 0 .. pre-1
    std::vector<Word> columnPeriod;     // then cycling with this block
    // Reachable word sets for t = 0 .. pre+per-1, each sorted ascending; the
    // last |columnPeriod| entries repeat forever. Every word in entry t
    // projects onto [offset, offset+width) as the single trace value.
    std::vector<std::vector<Word>> reachableSetTrace;
};

// A context pair around u whose columns split at every offset within the
// horizon: u is not width-blocking for the uniform CA of f, at any offset.
struct BlockingRefutation {
    Word word;
    std::int64_t width = 0;
    Word leftA, rightA;  // reference contexts (all 0)
    Word leftB, rightB;
    std::vector<std::int64_t> splitTime;  // per offset: least t with a split
};

// Exact decision in the adversarial-boundary model: evolve R_t subsets of
// A^|u| from R_0 = {u}, where each step extends every word by a fresh
// context pair in A^r x A^r before applying f cellwise. Sound: a real rule
// assignment agreeing with f on the span only ever realizes context
// sequences the model already covers. None means no offset certified.
std::optional<BlockingCertificate> certify_strongly_blocking(
    const LocalRule& f, const Word& u, std::int64_t s, std::int64_t setBudget = 1 << 16);

// Searches pairs in [u]_0 differing only in the m cells of context each side
// (zero beyond), simulated horizon steps under the uniform CA of f. Returns
// the first (ascending) perturbation whose columns split at every offset.
// None is inconclusive. Cost grows as q^(2m).
std::optional<BlockingRefutation> refute_blocking(const LocalRule& f, const Word& u,
                                                  std::int64_t s, std::int64_t horizon,
                                                  std::int64_t padding);

struct BlockingWordFind {
    Word word;
    BlockingCertificate certificate;
};

// First certified word in length-then-lexicographic order, length <= maxLen.
std::optional<BlockingWordFind> find_strongly_blocking(const LocalRule& f, std::int64_t s,
                                                       std::int64_t maxLen,
                                                       std::int64_t setBudget = 1 << 16);

// F^(q+p) = F^q for the uniform CA of f, established exhaustively on finite
// words: f^(q+p)(u) = f^q of the centered subword, for all u of length
// 2(q+p)r+1.
struct EquicontinuityWitness {
    std::int64_t preperiod = 0;  // q
    std::int64_t period = 1;     // p
};

// Minimal witness by (q+p, then q) within the bounds; None is inconclusive,
// not a disproof.
std::optional<EquicontinuityWitness> equicontinuity_search(
    const LocalRule& f, std::int64_t maxQ, std::int64_t maxP,
    std::int64_t tableBudget = kDefaultTableBudget);

struct ClassifyBounds {
    std::int64_t maxWordLen = 4;  // blocking-word scan cap
    std::int64_t maxQ = 3;        // F^(q+p) = F^q search caps
    std::int64_t maxP = 3;
    std::int64_t horizon = 30;  // refutation horizon reported with bounded verdicts
    std::int64_t setBudget = 1 << 16;
    std::int64_t tableBudget = kDefaultTableBudget;
};

struct CaClassification {
    enum class Kind { Equicontinuous, AlmostEquicontinuousCert, NoBlockingWordUpTo };
    Kind kind = Kind::NoBlockingWordUpTo;
    // Equicontinuous: F^(q+p) = F^q; every word of length blockLen certifies
    // with column width r.
    std::int64_t preperiod = 0;
    std::int64_t period = 0;
    std::int64_t blockLen = 0;  // (2p+2q+1)r
    // AlmostEquicontinuousCert: least blocking word found and its certificate.
    Word blockingWord;
    std::optional<BlockingCertificate> certificate;
    // NoBlockingWordUpTo: bounded evidence of sensitivity, not a proof.
    std::int64_t maxLen = 0;
    std::int64_t horizon = 0;
};

CaClassification classify_ca(const LocalRule& f, const ClassifyBounds& bounds = {});

struct NuCaClassification {
    enum class Kind { Equicontinuous, AlmostEquicontinuous, Unknown };
    Kind kind = Kind::Unknown;
    // The classification theorems need one shared default rule on both tails.
    bool singleDefault = false;
    std::optional<CaClassification> defaultClassification;
    std::int64_t compatibleLen = 0;  // n with the family n-compatible
    Word blockingWord;               // AlmostEquicontinuous evidence
    std::optional<BlockingCertificate> certificate;
};

NuCaClassification classify_nuca(const NuCaSpec& spec, const ClassifyBounds& bounds = {});

// Sampled check that the whole family is ultimately periodic when its single
// default rule is: orbits of seeded random configurations must all close up.
struct UltimatePeriodicityReport {
    enum class Kind { Verified, Inconclusive };
    Kind kind = Kind::Inconclusive;
    std::int64_t preperiod = 0;  // max sampled preperiod
    std::int64_t period = 1;     // lcm of sampled periods
    std::int64_t samples = 0;
};

UltimatePeriodicityReport detect_global_ultimate_periodicity(
    const NuCaSpec& spec, const CaClassification& defaultClassification,
    std::int64_t sampleBudget, std::uint64_t seed = 1);

}  // namespace nuca
