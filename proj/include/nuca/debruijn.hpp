#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "nuca/core.hpp"
#include "nuca/rules.hpp"

namespace nuca {

// Labeled De Bruijn graph of a period-1 spec.  Vertices pair a word of A^(2r)
// with a slot in [0, 2k+1] (slot = window position + k).  Slot 0 carries the
// left-default self-edges, slots s -> s+1 the window rule at position s-k,
// slot 2k+1 the right-default self-edges.  Edge bits: 1 on slot-(2k+1)
// self-edges, 0 elsewhere; the bit marks the crossing past cell k.
struct DeBruijnGraph {
    Alphabet alphabet;
    int radius = 1;
    std::int64_t k = 0;
    std::int64_t wordCount = 1;  // |A|^(2r)
    std::int64_t slots = 2;      // 2k+2

    struct Edge {
        std::int64_t from = 0;
        std::int64_t to = 0;
        Symbol symbol = 0;
        int bit = 0;
    };
    std::vector<Edge> edges;
    std::vector<std::vector<std::int32_t>> out;  // edge ids, grouped by source

    std::int64_t vertex_count() const { return wordCount * slots; }
    std::int64_t vertex_id(std::int64_t word, std::int64_t slot) const {
        return word * slots + slot;
    }
    std::int64_t word_of(std::int64_t v) const { return v / slots; }
    std::int64_t slot_of(std::int64_t v) const { return v % slots; }
};

// Requires pL == pR == 1 and radius >= 1 (use pack_spec to get there).
DeBruijnGraph build_debruijn(const NuCaSpec& spec, std::int64_t vertexBudget = 1 << 24);

// Pairs of De Bruijn vertices with equal slots; an edge needs both component
// edges to exist with the same symbol label.  Bit 0 iff source pair and
// target pair are both diagonal (equal words), else 1.
struct ProductGraph {
    std::int64_t wordCount = 1;
    std::int64_t slots = 2;

    struct Edge {
        std::int64_t from = 0;
        std::int64_t to = 0;
        Symbol symbol = 0;
        int bit = 0;
    };
    std::vector<Edge> edges;
    std::vector<std::vector<std::int32_t>> out;
    std::vector<std::vector<std::int32_t>> in;

    std::int64_t vertex_count() const { return wordCount * wordCount * slots; }
    std::int64_t vertex_id(std::int64_t u, std::int64_t v, std::int64_t slot) const {
        return (u * wordCount + v) * slots + slot;
    }
    std::int64_t left_word_of(std::int64_t x) const { return x / slots / wordCount; }
    std::int64_t right_word_of(std::int64_t x) const { return (x / slots) % wordCount; }
    std::int64_t slot_of(std::int64_t x) const { return x % slots; }
};

ProductGraph build_product(const DeBruijnGraph& g, std::int64_t vertexBudget = 1 << 22);

// Vertices/edges lying on a path from one nontrivial strongly connected
// component to another (self-loops count as nontrivial).
struct ReducedProductGraph {
    std::vector<char> inD;               // per product vertex
    std::vector<std::int64_t> sccId;     // per product vertex
    std::vector<char> sccNontrivial;     // per SCC id
    std::int64_t sccCount = 0;
    std::int64_t nontrivialSccCount = 0;

    bool edge_in(const ProductGraph& p, std::int32_t e) const {
        return inD[static_cast<std::size_t>(p.edges[static_cast<std::size_t>(e)].from)] &&
               inD[static_cast<std::size_t>(p.edges[static_cast<std::size_t>(e)].to)];
    }
};

ReducedProductGraph build_reduced(const ProductGraph& p);

struct SurjectivityVerdict {
    enum class Kind { Surjective, NotSurjective } kind = Kind::Surjective;
    Word witnessWord;             // over the original alphabet
    std::int64_t position = 0;    // cell index of the word's first symbol
};

// Language containment against the pattern (A x {0})*(A x {1})*, by subset
// construction with every vertex initial and final.  The witness word has no
// preimage fragment at its position; never returns a guessed verdict.
SurjectivityVerdict decide_surjective(const NuCaSpec& spec,
                                      std::int64_t stateBudget = 1 << 20,
                                      std::int64_t tableBudget = kDefaultTableBudget);

struct InjectivityVerdict {
    enum class Kind { Injective, NotInjective } kind = Kind::Injective;
    EpConfig witnessA;  // distinct configurations with equal images
    EpConfig witnessB;
};

// Injective iff no initial-to-final path inside the reduced product graph
// crosses a bit-1 edge; otherwise the path is pumped on both ends into an
// eventually periodic witness pair.
InjectivityVerdict decide_injective(const NuCaSpec& spec,
                                    std::int64_t stateBudget = 1 << 22,
                                    std::int64_t tableBudget = kDefaultTableBudget);

struct SurjectivityOracleResult {
    enum class Kind { RefutedAt, ConsistentUpTo } kind = Kind::ConsistentUpTo;
    Word word;                  // minimized preimage-free word (RefutedAt)
    std::int64_t position = 0;  // its first cell
    std::int64_t n = 0;         // half-width at which refutation was found
    std::int64_t bound = 0;     // the L that was exhausted (ConsistentUpTo)
};

// Brute force on the unpacked spec: for n = k+1..L enumerate all preimage
// words of length 2n+1+2r and mark the image words they produce on [-n, n];
// an unmarked target refutes surjectivity and is stripped to a minimal
// preimage-free word.  ConsistentUpTo is evidence, not proof.
SurjectivityOracleResult surjectivity_oracle(const NuCaSpec& spec, std::int64_t maxHalfWidth,
                                             std::int64_t enumBudget = 1LL << 27);

// Independent route to a non-injectivity witness: searches the unreduced
// product graph, keeping only vertices with an infinite backward history at
// slot 0 and an infinite forward future at slot 2k+1, then pumps.
std::optional<std::pair<EpConfig, EpConfig>> injectivity_witness_oracle(
    const NuCaSpec& spec, std::int64_t stateBudget = 1 << 22,
    std::int64_t tableBudget = kDefaultTableBudget);

struct PreimageBounds {
    std::int64_t maxTailPeriod = 1;
    std::int64_t maxCenterWidth = 6;
    std::int64_t offsetMin = -4;
    std::int64_t offsetMax = 4;
};

// All distinct preimages of y whose canonical form fits the bounds; complete
// only within them.
std::vector<EpConfig> count_preimages_bounded(const NuCaSpec& spec, const EpConfig& y,
                                              const PreimageBounds& bounds);

}  // namespace nuca
