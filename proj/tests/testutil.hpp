#pragma once

#include <cstdint>
#include <random>

#include "nuca/core.hpp"
#include "nuca/rules.hpp"

// Seeded generators shared by the unit suites and the acceptance runner.
// Structured rules are oversampled: uniform random tables are almost never
// injective or surjective, and the deciders' interesting paths live there.

namespace testutil {

using namespace nuca;

inline LocalRule random_rule(std::mt19937_64& rng, Alphabet alphabet, int radius) {
    LocalRule f;
    f.alphabet = alphabet;
    f.radius = radius;
    f.table = Word(static_cast<std::size_t>(rule_table_size(alphabet, radius)));
    for (std::size_t i = 0; i < f.table.size(); ++i)
        f.table.set(i, static_cast<Symbol>(rng() % static_cast<std::uint64_t>(alphabet.q)));
    return f;
}

inline LocalRule mixed_rule(std::mt19937_64& rng, Alphabet alphabet, int radius) {
    switch (rng() % 8) {
        case 0: return pad_radius(identity_rule(alphabet), radius);
        case 1: return pad_radius(left_shift_rule(alphabet), radius);
        case 2: return pad_radius(right_shift_rule(alphabet), radius);
        case 3:
            return constant_rule(alphabet, static_cast<Symbol>(rng() % static_cast<std::uint64_t>(alphabet.q)),
                                 radius);
        case 4:
            if (alphabet.q == 2) return pad_radius(xor_rule(), radius);
            [[fallthrough]];
        default: return random_rule(rng, alphabet, radius);
    }
}

inline Word random_word(std::mt19937_64& rng, Alphabet alphabet, std::size_t n) {
    Word w(n);
    for (std::size_t i = 0; i < n; ++i)
        w.set(i, static_cast<Symbol>(rng() % static_cast<std::uint64_t>(alphabet.q)));
    return w;
}

inline Word random_nonempty_word(std::mt19937_64& rng, Alphabet alphabet, std::size_t maxLen) {
    return random_word(rng, alphabet, 1 + rng() % maxLen);
}

inline EpConfig random_config(std::mt19937_64& rng, Alphabet alphabet, std::size_t maxTail = 3,
                              std::size_t maxCenter = 6, std::int64_t maxAbsOffset = 4) {
    EpConfig x;
    x.alphabet = alphabet;
    x.leftPeriod = random_nonempty_word(rng, alphabet, maxTail);
    x.rightPeriod = random_nonempty_word(rng, alphabet, maxTail);
    x.center = random_word(rng, alphabet, rng() % (maxCenter + 1));
    x.offset = static_cast<std::int64_t>(rng() % (2 * static_cast<std::uint64_t>(maxAbsOffset) + 1)) -
               maxAbsOffset;
    return x;
}

// Period-1 tails, exceptional window |i| <= k.
inline NuCaSpec random_period1_spec(std::mt19937_64& rng, Alphabet alphabet, int radius, int maxK) {
    NuCaSpec spec;
    spec.alphabet = alphabet;
    spec.radius = radius;
    spec.k = static_cast<int>(rng() % static_cast<std::uint64_t>(maxK + 1));
    for (int i = 0; i < 2 * spec.k + 1; ++i) spec.window.push_back(mixed_rule(rng, alphabet, radius));
    spec.leftTail.push_back(mixed_rule(rng, alphabet, radius));
    spec.rightTail.push_back(mixed_rule(rng, alphabet, radius));
    return spec;
}

// One shared default rule on both tails.
inline NuCaSpec random_default_spec(std::mt19937_64& rng, Alphabet alphabet, int radius, int maxK) {
    NuCaSpec spec = random_period1_spec(rng, alphabet, radius, maxK);
    spec.leftTail = spec.rightTail;
    return spec;
}

// Independent structural tail periods up to maxP.
inline NuCaSpec random_periodic_spec(std::mt19937_64& rng, Alphabet alphabet, int radius, int maxK,
                                     int maxP) {
    NuCaSpec spec;
    spec.alphabet = alphabet;
    spec.radius = radius;
    spec.k = static_cast<int>(rng() % static_cast<std::uint64_t>(maxK + 1));
    for (int i = 0; i < 2 * spec.k + 1; ++i) spec.window.push_back(mixed_rule(rng, alphabet, radius));
    std::size_t pl = 1 + rng() % static_cast<std::uint64_t>(maxP);
    std::size_t pr = 1 + rng() % static_cast<std::uint64_t>(maxP);
    for (std::size_t i = 0; i < pl; ++i) spec.leftTail.push_back(mixed_rule(rng, alphabet, radius));
    for (std::size_t i = 0; i < pr; ++i) spec.rightTail.push_back(mixed_rule(rng, alphabet, radius));
    return spec;
}

// Reference image cell, computed from sample/rule_at/apply only; the engine's
// step must match this at every position.
inline Symbol pointwise_image(const NuCaSpec& spec, const EpConfig& x, std::int64_t i) {
    const LocalRule& h = rule_at(spec, i);
    Word nb(static_cast<std::size_t>(2 * spec.radius + 1));
    for (int m = -spec.radius; m <= spec.radius; ++m)
        nb.set(static_cast<std::size_t>(m + spec.radius), sample(x, i + m));
    return apply(h, nb);
}

}  // namespace testutil
