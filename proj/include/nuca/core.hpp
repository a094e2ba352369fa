#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "nuca/errors.hpp"

namespace nuca {

using Symbol = int;

// Symbols are 0..q-1.
struct Alphabet {
    int q = 2;

    bool contains(Symbol a) const { return 0 <= a && a < q; }
    auto operator<=>(const Alphabet&) const = default;
};

// Finite word. Storage is 16-bit: block-packed alphabets can outgrow a byte,
// but every packing the budget admits stays below 65536 symbols.
struct Word {
    std::vector<std::uint16_t> syms;

    Word() = default;
    explicit Word(std::size_t n) : syms(n, 0) {}
    Word(std::initializer_list<int> list) {
        syms.reserve(list.size());
        for (int a : list) syms.push_back(static_cast<std::uint16_t>(a));
    }

    std::size_t size() const { return syms.size(); }
    bool empty() const { return syms.empty(); }
    Symbol operator[](std::size_t i) const { return syms[i]; }
    void set(std::size_t i, Symbol a) { syms[i] = static_cast<std::uint16_t>(a); }
    void push_back(Symbol a) { syms.push_back(static_cast<std::uint16_t>(a)); }

    auto operator<=>(const Word&) const = default;
};

Word subword(const Word& w, std::size_t from, std::size_t len);
Word concat(const Word& a, const Word& b);
Word repeat_word(const Word& w, std::size_t times);

// Smallest divisor d of |w| such that w is the (|w|/d)-fold repeat of its
// first d symbols. |w| for primitive words; 0 only for the empty word.
std::size_t primitive_tiling_period(const Word& w);

// Eventually periodic bi-infinite configuration.
//   x_i = center[i - offset]                                  on [offset, offset+|center|)
//   x_{offset-1-j} = leftPeriod[|L|-1 - (j mod |L|)]          for j >= 0
//   x_{offset+|center|+j} = rightPeriod[j mod |R|]            for j >= 0
// Both tails are anchored at the center boundaries, so two value-equal field
// tuples denote the same function Z -> A and vice versa once normalized.
struct EpConfig {
    Alphabet alphabet;
    Word leftPeriod;   // nonempty
    Word center;
    std::int64_t offset = 0;
    Word rightPeriod;  // nonempty

    auto operator<=>(const EpConfig&) const = default;
};

EpConfig make_uniform_config(Alphabet alphabet, Symbol a);
EpConfig make_finite_config(Alphabet alphabet, Symbol background, const Word& center,
                            std::int64_t offset);

// Throws InputError when tails are empty or any symbol is out of range.
void check_config(const EpConfig& x);

Symbol sample(const EpConfig& x, std::int64_t i);

struct DistanceExponent {
    bool equal = false;
    std::int64_t n = 0;  // min{ i >= 0 : x_i != y_i or x_{-i} != y_{-i} }, valid iff !equal
};

DistanceExponent distance_exponent(const EpConfig& x, const EpConfig& y);

// Canonical form: primitive tails, fully-periodic configurations collapsed to
// (w, "", 0, w), and otherwise the unique widest tails / narrowest center.
// normalize(a) == normalize(b) as raw fields iff a and b denote the same
// configuration; idempotent.
EpConfig normalize(const EpConfig& x);

bool equals(const EpConfig& x, const EpConfig& y);

// Textual forms. Symbols render as 0-9A-Z while q <= 36, comma-separated
// integers beyond that.
char symbol_to_char(Symbol a);
Symbol char_to_symbol(char c);
std::string format_word(const Word& w, const Alphabet& alphabet);
Word parse_word(const std::string& text, const Alphabet& alphabet);

// Configuration literal: "<left>*|<center>@<offset>|<right>*", e.g.
// "0*|102@-1|2*"; empty center renders as "0*|@0|0*".
std::string format_config(const EpConfig& x);
EpConfig parse_config(const std::string& text, Alphabet alphabet);

}  // namespace nuca
