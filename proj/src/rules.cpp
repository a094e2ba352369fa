#include "nuca/rules.hpp"

#include <algorithm>
#include <string>

namespace nuca {

std::int64_t rule_table_size(const Alphabet& alphabet, int radius, std::int64_t tableBudget) {
    std::int64_t size = 1;
    for (int m = 0; m < 2 * radius + 1; ++m) {
        size *= alphabet.q;
        if (size > tableBudget)
            throw BudgetError("rule table q^(2r+1) with q=" + std::to_string(alphabet.q) +
                              ", r=" + std::to_string(radius) + " exceeds the table budget");
    }
    return size;
}

namespace {

// Ascending odometer over A^len; returns false after the last word.
bool next_word(Word& w, int q) {
    for (std::size_t i = w.size(); i-- > 0;) {
        if (w[i] + 1 < q) {
            w.set(i, w[i] + 1);
            return true;
        }
        w.set(i, 0);
    }
    return false;
}

std::int64_t word_index(const Word& w, int q) {
    std::int64_t idx = 0;
    for (std::size_t i = 0; i < w.size(); ++i) idx = idx * q + w[i];
    return idx;
}

}  // namespace

LocalRule make_rule(Alphabet alphabet, int radius,
                    const std::function<Symbol(const Word&)>& f) {
    const std::int64_t size = rule_table_size(alphabet, radius);
    LocalRule rule;
    rule.alphabet = alphabet;
    rule.radius = radius;
    rule.table = Word(static_cast<std::size_t>(size));
    Word nb(static_cast<std::size_t>(2 * radius + 1));
    std::int64_t idx = 0;
    do {
        rule.table.set(static_cast<std::size_t>(idx++), f(nb));
    } while (next_word(nb, alphabet.q));
    return rule;
}

Symbol apply(const LocalRule& f, const Word& neighborhood) {
    if (neighborhood.size() != static_cast<std::size_t>(2 * f.radius + 1))
        throw InputError("neighborhood length must be 2r+1");
    return f.table[static_cast<std::size_t>(word_index(neighborhood, f.alphabet.q))];
}

Word extend_word(const LocalRule& f, const Word& u) {
    const std::size_t span = static_cast<std::size_t>(2 * f.radius);
    Word out;
    if (u.size() <= span) return out;
    out = Word(u.size() - span);
    for (std::size_t i = 0; i + span < u.size(); ++i)
        out.set(i, apply(f, subword(u, i, span + 1)));
    return out;
}

LocalRule self_compose(const LocalRule& f, int n, std::int64_t tableBudget) {
    if (n == 0) return identity_rule_of_radius_zero(f.alphabet);
    LocalRule acc = f;
    for (int m = 1; m < n; ++m) {
        // acc = f^m; build f^(m+1)(u) = f( acc(u_[j, j+2mr]) for j = 0..2r ).
        const int radius = (m + 1) * f.radius;
        rule_table_size(f.alphabet, radius, tableBudget);
        LocalRule next;
        next.alphabet = f.alphabet;
        next.radius = radius;
        next.table = Word(static_cast<std::size_t>(rule_table_size(f.alphabet, radius, tableBudget)));
        Word u(static_cast<std::size_t>(2 * radius + 1));
        std::int64_t idx = 0;
        Word mid(static_cast<std::size_t>(2 * f.radius + 1));
        do {
            for (int j = 0; j <= 2 * f.radius; ++j)
                mid.set(static_cast<std::size_t>(j),
                        apply(acc, subword(u, static_cast<std::size_t>(j),
                                           static_cast<std::size_t>(2 * m * f.radius + 1))));
            next.table.set(static_cast<std::size_t>(idx++), apply(f, mid));
        } while (next_word(u, f.alphabet.q));
        acc = std::move(next);
    }
    return acc;
}

LocalRule pad_radius(const LocalRule& f, int R, std::int64_t tableBudget) {
    if (R < f.radius) throw InputError("pad_radius target smaller than the rule's radius");
    if (R == f.radius) return f;
    rule_table_size(f.alphabet, R, tableBudget);
    const std::size_t margin = static_cast<std::size_t>(R - f.radius);
    return make_rule(f.alphabet, R, [&](const Word& nb) {
        return apply(f, subword(nb, margin, static_cast<std::size_t>(2 * f.radius + 1)));
    });
}

LocalRule identity_rule_of_radius_zero(Alphabet alphabet) {
    return make_rule(alphabet, 0, [](const Word& nb) { return nb[0]; });
}

LocalRule identity_rule(Alphabet alphabet) {
    return make_rule(alphabet, 1, [](const Word& nb) { return nb[1]; });
}

LocalRule left_shift_rule(Alphabet alphabet) {
    return make_rule(alphabet, 1, [](const Word& nb) { return nb[2]; });
}

LocalRule right_shift_rule(Alphabet alphabet) {
    return make_rule(alphabet, 1, [](const Word& nb) { return nb[0]; });
}

LocalRule constant_rule(Alphabet alphabet, Symbol a, int radius) {
    return make_rule(alphabet, radius, [a](const Word&) { return a; });
}

LocalRule xor_rule() {
    return make_rule(Alphabet{2}, 1, [](const Word& nb) { return nb[0] ^ nb[2]; });
}

std::string format_rule(const LocalRule& f) { return format_word(f.table, f.alphabet); }

LocalRule parse_rule(const std::string& text, Alphabet alphabet, int radius) {
    LocalRule rule;
    rule.alphabet = alphabet;
    rule.radius = radius;
    rule.table = parse_word(text, alphabet);
    if (static_cast<std::int64_t>(rule.table.size()) != rule_table_size(alphabet, radius))
        throw InputError("rule literal length must be q^(2r+1)");
    return rule;
}

const char* to_string(NuCaClass c) {
    switch (c) {
        case NuCaClass::UniformCA: return "UniformCA";
        case NuCaClass::DefaultPerturbed: return "DefaultPerturbed";
        case NuCaClass::PeriodicallyPerturbed: return "PeriodicallyPerturbed";
        case NuCaClass::RadiusUniform: return "RadiusUniform";
    }
    return "?";
}

void check_spec(const NuCaSpec& spec) {
    if (spec.k < 0) throw InputError("k must be nonnegative");
    if (spec.window.size() != static_cast<std::size_t>(2 * spec.k + 1))
        throw InputError("window must hold exactly 2k+1 rules");
    if (spec.leftTail.empty() || spec.rightTail.empty())
        throw InputError("tail rule sequences must be nonempty");
    auto checkRule = [&](const LocalRule& f) {
        if (f.alphabet != spec.alphabet || f.radius != spec.radius)
            throw InputError("all rules must share the spec's alphabet and radius");
        if (static_cast<std::int64_t>(f.table.size()) != rule_table_size(spec.alphabet, spec.radius))
            throw InputError("rule table length must be q^(2r+1)");
    };
    for (const auto& f : spec.window) checkRule(f);
    for (const auto& f : spec.leftTail) checkRule(f);
    for (const auto& f : spec.rightTail) checkRule(f);
}

NuCaSpec make_uniform_spec(const LocalRule& f) {
    NuCaSpec spec;
    spec.alphabet = f.alphabet;
    spec.radius = f.radius;
    spec.k = 0;
    spec.window = {f};
    spec.leftTail = {f};
    spec.rightTail = {f};
    return spec;
}

NuCaSpec make_default_spec(const LocalRule& defaultRule,
                           const std::vector<std::pair<std::int64_t, LocalRule>>& exceptions) {
    std::int64_t k = 0;
    for (const auto& [i, f] : exceptions) k = std::max(k, std::abs(i));
    NuCaSpec spec;
    spec.alphabet = defaultRule.alphabet;
    spec.radius = defaultRule.radius;
    spec.k = static_cast<int>(k);
    spec.window.assign(static_cast<std::size_t>(2 * k + 1), defaultRule);
    for (const auto& [i, f] : exceptions) spec.window[static_cast<std::size_t>(i + k)] = f;
    spec.leftTail = {defaultRule};
    spec.rightTail = {defaultRule};
    check_spec(spec);
    return spec;
}

namespace {

std::size_t mod_index(std::int64_t i, std::size_t p) {
    const std::int64_t m = i % static_cast<std::int64_t>(p);
    return static_cast<std::size_t>(m < 0 ? m + static_cast<std::int64_t>(p) : m);
}

// Primitive root of a cyclic rule sequence.
std::vector<LocalRule> reduce_tail(const std::vector<LocalRule>& tail) {
    const std::size_t n = tail.size();
    for (std::size_t d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        bool ok = true;
        for (std::size_t i = d; i < n && ok; ++i) ok = tail[i] == tail[i - d];
        if (ok) return {tail.begin(), tail.begin() + d};
    }
    return tail;
}

}  // namespace

const LocalRule& rule_at(const NuCaSpec& spec, std::int64_t i) {
    if (i > spec.k) return spec.rightTail[mod_index(i, spec.rightTail.size())];
    if (i < -spec.k) return spec.leftTail[mod_index(i, spec.leftTail.size())];
    return spec.window[static_cast<std::size_t>(i + spec.k)];
}

NuCaClass class_of(const NuCaSpec& spec) {
    const std::vector<LocalRule> left = reduce_tail(spec.leftTail);
    const std::vector<LocalRule> right = reduce_tail(spec.rightTail);
    if (left.size() == 1 && right.size() == 1 && left[0] == right[0]) {
        bool uniform = true;
        for (const auto& f : spec.window) uniform = uniform && f == left[0];
        return uniform ? NuCaClass::UniformCA : NuCaClass::DefaultPerturbed;
    }
    return NuCaClass::PeriodicallyPerturbed;
}

bool is_n_compatible(const NuCaSpec& spec, const LocalRule& f, std::int64_t n) {
    auto tailOk = [&](const std::vector<LocalRule>& tail) {
        bool all = true;
        for (const auto& g : tail) all = all && g == f;
        if (all) return true;
        // Longest cyclic run of f: scan two concatenated periods.
        const std::size_t p = tail.size();
        std::int64_t best = 0, run = 0;
        for (std::size_t i = 0; i < 2 * p; ++i) {
            if (tail[i % p] == f) best = std::max(best, ++run);
            else run = 0;
        }
        return best >= n;
    };
    return tailOk(spec.leftTail) && tailOk(spec.rightTail);
}

NuCaSpec canonical_spec(const NuCaSpec& spec) {
    NuCaSpec out = spec;
    out.leftTail = reduce_tail(spec.leftTail);
    out.rightTail = reduce_tail(spec.rightTail);
    // Shrink the window while its edges agree with the tails' phase there.
    while (out.k > 0) {
        const LocalRule& leftEdge = out.window.front();
        const LocalRule& rightEdge = out.window.back();
        if (leftEdge != out.leftTail[mod_index(-out.k, out.leftTail.size())]) break;
        if (rightEdge != out.rightTail[mod_index(out.k, out.rightTail.size())]) break;
        out.window.erase(out.window.begin());
        out.window.pop_back();
        --out.k;
    }
    return out;
}

}  // namespace nuca
