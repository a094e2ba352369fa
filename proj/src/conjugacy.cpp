#include "nuca/conjugacy.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "nuca/errors.hpp"

namespace nuca {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b) != 0 && ((a < 0) != (b < 0))) --q;
    return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

// q^b, or -1 on overflow past cap.
std::int64_t checked_pow(std::int64_t q, std::int64_t b, std::int64_t cap) {
    std::int64_t v = 1;
    for (std::int64_t i = 0; i < b; ++i) {
        if (v > cap / q) return -1;
        v *= q;
    }
    return v;
}

}  // namespace

Symbol PackedAlphabetMap::encode(const Word& block) const {
    std::int64_t s = 0;
    for (std::size_t m = 0; m < block.size(); ++m) s = s * source.q + block[m];
    return static_cast<Symbol>(s);
}

Word PackedAlphabetMap::decode(Symbol s) const {
    Word w(static_cast<std::size_t>(b));
    std::int64_t v = s;
    for (std::int64_t m = b - 1; m >= 0; --m) {
        w.set(static_cast<std::size_t>(m), static_cast<Symbol>(v % source.q));
        v /= source.q;
    }
    return w;
}

PackedAlphabetMap make_packed_alphabet(const Alphabet& source, std::int64_t b) {
    std::int64_t qb = checked_pow(source.q, b, 65536);
    if (qb < 0)
        throw BudgetError("packed alphabet " + std::to_string(source.q) + "^" +
                          std::to_string(b) + " does not fit a symbol");
    return PackedAlphabetMap{b, source, Alphabet{static_cast<int>(qb)}};
}

EpConfig pack_config(const PackedAlphabetMap& map, const EpConfig& x) {
    check_config(x);
    const std::int64_t b = map.b;
    const std::int64_t o = x.offset;
    const std::int64_t e = o + static_cast<std::int64_t>(x.center.size());
    const std::int64_t bA = floor_div(o, b);
    const std::int64_t bB = std::max(bA, ceil_div(e, b));
    const std::int64_t LL = std::lcm(static_cast<std::int64_t>(x.leftPeriod.size()), b) / b;
    const std::int64_t RR = std::lcm(static_cast<std::int64_t>(x.rightPeriod.size()), b) / b;

    auto block = [&](std::int64_t j) {
        Word w(static_cast<std::size_t>(b));
        for (std::int64_t m = 0; m < b; ++m)
            w.set(static_cast<std::size_t>(m), sample(x, j * b + m));
        return map.encode(w);
    };

    EpConfig y;
    y.alphabet = map.packed;
    y.offset = bA;
    for (std::int64_t j = bA - LL; j < bA; ++j) y.leftPeriod.push_back(block(j));
    for (std::int64_t j = bA; j < bB; ++j) y.center.push_back(block(j));
    for (std::int64_t j = bB; j < bB + RR; ++j) y.rightPeriod.push_back(block(j));
    return normalize(y);
}

EpConfig unpack_config(const PackedAlphabetMap& map, const EpConfig& y) {
    check_config(y);
    auto expand = [&](const Word& w) {
        Word out;
        for (std::size_t j = 0; j < w.size(); ++j) {
            Word blk = map.decode(w[j]);
            for (std::size_t m = 0; m < blk.size(); ++m) out.push_back(blk[m]);
        }
        return out;
    };
    EpConfig x;
    x.alphabet = map.source;
    x.leftPeriod = expand(y.leftPeriod);
    x.center = expand(y.center);
    x.offset = y.offset * map.b;
    x.rightPeriod = expand(y.rightPeriod);
    return normalize(x);
}

PackedSpec pack_spec(const NuCaSpec& spec, std::int64_t tableBudget) {
    check_spec(spec);
    const std::int64_t pL = static_cast<std::int64_t>(spec.leftTail.size());
    const std::int64_t pR = static_cast<std::int64_t>(spec.rightTail.size());
    const std::int64_t r = spec.radius;
    const std::int64_t lcmT = std::lcm(pL, pR);
    const std::int64_t b = lcmT * std::max<std::int64_t>(1, ceil_div(r, lcmT));

    if (b == 1 && r == 1) return PackedSpec{spec, make_packed_alphabet(spec.alphabet, 1)};

    std::int64_t qb = checked_pow(spec.alphabet.q, b, 65536);
    std::int64_t table = qb < 0 ? -1 : checked_pow(qb, 3, tableBudget);
    if (qb < 0 || table < 0)
        throw BudgetError("packing needs block length " + std::to_string(b) +
                          "; the packed rule table over alphabet " +
                          std::to_string(spec.alphabet.q) + "^" + std::to_string(b) +
                          " exceeds the budget");

    PackedAlphabetMap map = make_packed_alphabet(spec.alphabet, b);
    const std::int64_t kp = ceil_div(spec.k + 1, b);

    // Packed rule for block j: cell jb+m reads the decoded 3b-cell strip at
    // local offset b+m-r .. b+m+r (valid since b >= r).
    auto packed_rule = [&](const std::function<const LocalRule&(std::int64_t)>& sel) {
        LocalRule g;
        g.alphabet = map.packed;
        g.radius = 1;
        g.table = Word(static_cast<std::size_t>(table));
        Word strip(static_cast<std::size_t>(3 * b));
        for (std::int64_t t = 0; t < table; ++t) {
            std::int64_t v = t;
            for (std::int64_t part = 2; part >= 0; --part) {
                Word blk = map.decode(static_cast<Symbol>(v % qb));
                v /= qb;
                for (std::int64_t m = 0; m < b; ++m)
                    strip.set(static_cast<std::size_t>(part * b + m), blk[static_cast<std::size_t>(m)]);
            }
            Word out(static_cast<std::size_t>(b));
            for (std::int64_t m = 0; m < b; ++m) {
                const LocalRule& f = sel(m);
                Word nb = subword(strip, static_cast<std::size_t>(b + m - f.radius),
                                  static_cast<std::size_t>(2 * f.radius + 1));
                out.set(static_cast<std::size_t>(m), apply(f, nb));
            }
            g.table.set(static_cast<std::size_t>(t), map.encode(out));
        }
        return g;
    };

    NuCaSpec packed;
    packed.alphabet = map.packed;
    packed.radius = 1;
    packed.k = kp;
    for (std::int64_t j = -kp; j <= kp; ++j)
        packed.window.push_back(packed_rule(
            [&](std::int64_t m) -> const LocalRule& { return rule_at(spec, j * b + m); }));
    // pL and pR divide b, so tail blocks see a j-independent rule pattern.
    packed.leftTail = {packed_rule(
        [&](std::int64_t m) -> const LocalRule& { return spec.leftTail[static_cast<std::size_t>(m % pL)]; })};
    packed.rightTail = {packed_rule(
        [&](std::int64_t m) -> const LocalRule& { return spec.rightTail[static_cast<std::size_t>(m % pR)]; })};
    check_spec(packed);
    return PackedSpec{packed, map};
}

Symbol CaEmbedding::pair_symbol(Symbol a, std::int64_t idx) const {
    return static_cast<Symbol>(a * n + idx);
}

Symbol CaEmbedding::first(Symbol pair) const { return static_cast<Symbol>(pair / n); }

std::int64_t CaEmbedding::index_of(Symbol pair) const { return pair % n; }

std::int64_t CaEmbedding::rule_index_at(std::int64_t i) const {
    if (i > k) return rightIndex[static_cast<std::size_t>(i % static_cast<std::int64_t>(rightIndex.size()))];
    if (i < -k) {
        std::int64_t p = static_cast<std::int64_t>(leftIndex.size());
        std::int64_t m = ((i % p) + p) % p;
        return leftIndex[static_cast<std::size_t>(m)];
    }
    return windowIndex[static_cast<std::size_t>(i + k)];
}

EpConfig CaEmbedding::annotate(const EpConfig& x) const {
    check_config(x);
    const std::int64_t e = x.offset + static_cast<std::int64_t>(x.center.size());
    const std::int64_t PL =
        std::lcm(static_cast<std::int64_t>(leftIndex.size()), static_cast<std::int64_t>(x.leftPeriod.size()));
    const std::int64_t PR =
        std::lcm(static_cast<std::int64_t>(rightIndex.size()), static_cast<std::int64_t>(x.rightPeriod.size()));
    const std::int64_t tl = std::min(x.offset, -k) - 1;
    const std::int64_t tr = std::max(e, k + 1);
    return assemble_config(
        big, [&](std::int64_t i) { return pair_symbol(sample(x, i), rule_index_at(i)); }, tl, PL,
        tr, PR);
}

EpConfig CaEmbedding::project(const EpConfig& y) const {
    auto strip = [&](const Word& w) {
        Word out;
        for (std::size_t j = 0; j < w.size(); ++j) out.push_back(first(w[j]));
        return out;
    };
    EpConfig x;
    x.alphabet = Alphabet{static_cast<int>(big.q / n)};
    x.leftPeriod = strip(y.leftPeriod);
    x.center = strip(y.center);
    x.offset = y.offset;
    x.rightPeriod = strip(y.rightPeriod);
    return normalize(x);
}

CaEmbedding embed_in_ca(const NuCaSpec& spec, std::int64_t tableBudget) {
    check_spec(spec);
    CaEmbedding emb;
    emb.k = spec.k;
    emb.radius = spec.radius;

    auto index_for = [&](const LocalRule& f) {
        auto it = std::find(emb.rules.begin(), emb.rules.end(), f);
        if (it != emb.rules.end()) return static_cast<std::int64_t>(it - emb.rules.begin());
        emb.rules.push_back(f);
        return static_cast<std::int64_t>(emb.rules.size()) - 1;
    };
    for (const LocalRule& f : spec.window) emb.windowIndex.push_back(index_for(f));
    for (const LocalRule& f : spec.rightTail) emb.rightIndex.push_back(index_for(f));
    for (const LocalRule& f : spec.leftTail) emb.leftIndex.push_back(index_for(f));
    emb.n = static_cast<std::int64_t>(emb.rules.size());

    std::int64_t bigQ = spec.alphabet.q * emb.n;
    if (bigQ > 65536)
        throw BudgetError("paired alphabet of size " + std::to_string(bigQ) +
                          " does not fit a symbol");
    emb.big = Alphabet{static_cast<int>(bigQ)};

    const int r = spec.radius;
    const std::int64_t width = 2 * r + 1;
    std::int64_t table = 1;
    for (std::int64_t m = 0; m < width; ++m) {
        if (table > tableBudget / bigQ)
            throw BudgetError("paired rule table exceeds the budget");
        table *= bigQ;
    }
    emb.ca.alphabet = emb.big;
    emb.ca.radius = r;
    emb.ca.table = Word(static_cast<std::size_t>(table));
    Word symbols(static_cast<std::size_t>(width));
    for (std::int64_t t = 0; t < table; ++t) {
        std::int64_t v = t;
        std::int64_t centerIdx = 0;
        for (std::int64_t m = width - 1; m >= 0; --m) {
            Symbol pair = static_cast<Symbol>(v % bigQ);
            v /= bigQ;
            symbols.set(static_cast<std::size_t>(m), emb.first(pair));
            if (m == r) centerIdx = emb.index_of(pair);
        }
        emb.ca.table.set(static_cast<std::size_t>(t),
                         emb.pair_symbol(apply(emb.rules[static_cast<std::size_t>(centerIdx)], symbols), centerIdx));
    }
    return emb;
}

}  // namespace nuca
