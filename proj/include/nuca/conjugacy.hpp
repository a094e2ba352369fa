#pragma once

#include <cstdint>
#include <vector>

#include "nuca/core.hpp"
#include "nuca/engine.hpp"
#include "nuca/rules.hpp"

namespace nuca {

// Bijection between length-b words over a source alphabet and symbols of the
// packed alphabet of size q^b.  Leftmost cell is most significant.
struct PackedAlphabetMap {
    std::int64_t b = 1;
    Alphabet source;
    Alphabet packed;

    Symbol encode(const Word& block) const;  // block.size() == b
    Word decode(Symbol s) const;             // length-b word
};

PackedAlphabetMap make_packed_alphabet(const Alphabet& source, std::int64_t b);

struct PackedSpec {
    NuCaSpec spec;          // radius 1, both structural tail periods 1
    PackedAlphabetMap map;  // map.b == 1 means the input was returned unchanged
};

// Reads x in aligned blocks of map.b cells: sample(pack_config(map,x), j)
// encodes x_[jb, (j+1)b).  Any offset/tail phase is absorbed here.
EpConfig pack_config(const PackedAlphabetMap& map, const EpConfig& x);
EpConfig unpack_config(const PackedAlphabetMap& map, const EpConfig& y);

// Block-packing conjugacy.  b = lcm(pL,pR)*max(1, ceil(r/lcm)); the returned
// spec has radius 1 and period-1 tails, and
//   pack_config(map, step(spec, x)) == step(packed.spec, pack_config(map, x)).
// Throws BudgetError (naming the required b) when q^b does not fit a symbol
// or the packed rule table would exceed tableBudget entries.
PackedSpec pack_spec(const NuCaSpec& spec, std::int64_t tableBudget = kDefaultTableBudget);

// Embedding into a uniform CA over pairs (symbol, rule index).  Only the
// distinct local rules occurring in the spec are numbered: window cells first,
// then the right tail, then the left tail.
struct CaEmbedding {
    Alphabet big;                  // size q * n
    std::int64_t n = 1;            // number of distinct rules
    std::vector<LocalRule> rules;  // rules[idx], idx in [0, n)
    LocalRule ca;                  // uniform rule on paired symbols
    std::int64_t k = 0;            // copied from the source spec
    int radius = 0;
    std::vector<std::int64_t> windowIndex;  // rule index per window cell
    std::vector<std::int64_t> leftIndex;    // per left-tail phase
    std::vector<std::int64_t> rightIndex;   // per right-tail phase

    Symbol pair_symbol(Symbol a, std::int64_t idx) const;
    Symbol first(Symbol pair) const;            // symbol track
    std::int64_t index_of(Symbol pair) const;   // rule-index track
    std::int64_t rule_index_at(std::int64_t i) const;

    // annotate(x)_i = (x_i, rule index at i); satisfies
    // annotate(step(spec,x)) == step on the CA of annotate(x).
    EpConfig annotate(const EpConfig& x) const;
    // Drops the index track; project(annotate(x)) == normalize(x).
    EpConfig project(const EpConfig& y) const;
};

CaEmbedding embed_in_ca(const NuCaSpec& spec, std::int64_t tableBudget = kDefaultTableBudget);

}  // namespace nuca
