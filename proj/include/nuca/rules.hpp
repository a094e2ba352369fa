#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "nuca/core.hpp"

namespace nuca {

// Lookup-table local rule. table[ sum a_m * q^(2r-m) ] with a_0 the leftmost
// neighborhood cell.
struct LocalRule {
    Alphabet alphabet;
    int radius = 0;
    Word table;

    bool operator==(const LocalRule&) const = default;
};

inline constexpr std::int64_t kDefaultTableBudget = 1 << 26;

// Table length q^(2r+1); throws BudgetError past tableBudget entries.
std::int64_t rule_table_size(const Alphabet& alphabet, int radius,
                             std::int64_t tableBudget = kDefaultTableBudget);

LocalRule make_rule(Alphabet alphabet, int radius,
                    const std::function<Symbol(const Word&)>& f);

Symbol apply(const LocalRule& f, const Word& neighborhood);

// f extended to words: empty when |u| <= 2r, else |u|-2r sliding windows.
Word extend_word(const LocalRule& f, const Word& u);

// f^n as a single rule of radius n*r; n = 0 gives the radius-0 identity.
LocalRule self_compose(const LocalRule& f, int n,
                       std::int64_t tableBudget = kDefaultTableBudget);

// Same map as a rule of larger radius R (extra cells ignored).
LocalRule pad_radius(const LocalRule& f, int R,
                     std::int64_t tableBudget = kDefaultTableBudget);

LocalRule identity_rule(Alphabet alphabet);
LocalRule identity_rule_of_radius_zero(Alphabet alphabet);
LocalRule left_shift_rule(Alphabet alphabet);   // f(a,b,c) = c; image_i = x_{i+1}
LocalRule right_shift_rule(Alphabet alphabet);  // f(a,b,c) = a; image_i = x_{i-1}
LocalRule constant_rule(Alphabet alphabet, Symbol a, int radius = 1);
LocalRule xor_rule();                           // q = 2, f(a,b,c) = a xor c

// Rule literal: q^(2r+1) symbols in ascending neighborhood order
// (comma-separated integers when q > 36).
std::string format_rule(const LocalRule& f);
LocalRule parse_rule(const std::string& text, Alphabet alphabet, int radius);

// Finitary rule family. rule at i: window[i+k] for |i| <= k, rightTail[i mod
// pR] for i > k, leftTail[i mod pL into 0..pL-1] for i < -k. All rules share
// one alphabet and radius.
struct NuCaSpec {
    Alphabet alphabet;
    int radius = 0;
    int k = 0;
    std::vector<LocalRule> window;     // 2k+1 rules for positions -k..k
    std::vector<LocalRule> leftTail;   // nonempty
    std::vector<LocalRule> rightTail;  // nonempty

    bool operator==(const NuCaSpec&) const = default;
};

enum class NuCaClass { UniformCA, DefaultPerturbed, PeriodicallyPerturbed, RadiusUniform };

const char* to_string(NuCaClass c);

void check_spec(const NuCaSpec& spec);  // InputError on shape violations

NuCaSpec make_uniform_spec(const LocalRule& f);
// Default rule everywhere except the listed positions.
NuCaSpec make_default_spec(const LocalRule& defaultRule,
                           const std::vector<std::pair<std::int64_t, LocalRule>>& exceptions);

const LocalRule& rule_at(const NuCaSpec& spec, std::int64_t i);

// Strongest class that holds: UniformCA, else DefaultPerturbed (both tails a
// single shared rule after primitive reduction), else PeriodicallyPerturbed.
NuCaClass class_of(const NuCaSpec& spec);

// Both cyclic tails contain a length-n run of f (wraparound allowed; an
// all-f tail passes for every n).
bool is_n_compatible(const NuCaSpec& spec, const LocalRule& f, std::int64_t n);

// Primitive tails and the smallest k presenting the same rule family.
NuCaSpec canonical_spec(const NuCaSpec& spec);

}  // namespace nuca
