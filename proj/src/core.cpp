#include "nuca/core.hpp"

#include <algorithm>
#include <numeric>

namespace nuca {

Word subword(const Word& w, std::size_t from, std::size_t len) {
    Word out;
    out.syms.assign(w.syms.begin() + from, w.syms.begin() + from + len);
    return out;
}

Word concat(const Word& a, const Word& b) {
    Word out = a;
    out.syms.insert(out.syms.end(), b.syms.begin(), b.syms.end());
    return out;
}

Word repeat_word(const Word& w, std::size_t times) {
    Word out;
    out.syms.reserve(w.size() * times);
    for (std::size_t t = 0; t < times; ++t)
        out.syms.insert(out.syms.end(), w.syms.begin(), w.syms.end());
    return out;
}

std::size_t primitive_tiling_period(const Word& w) {
    const std::size_t n = w.size();
    for (std::size_t d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        bool ok = true;
        for (std::size_t i = d; i < n && ok; ++i) ok = w[i] == w[i - d];
        if (ok) return d;
    }
    return n;
}

EpConfig make_uniform_config(Alphabet alphabet, Symbol a) {
    EpConfig x;
    x.alphabet = alphabet;
    x.leftPeriod = Word{a};
    x.rightPeriod = Word{a};
    x.offset = 0;
    return x;
}

EpConfig make_finite_config(Alphabet alphabet, Symbol background, const Word& center,
                            std::int64_t offset) {
    EpConfig x;
    x.alphabet = alphabet;
    x.leftPeriod = Word{background};
    x.center = center;
    x.offset = offset;
    x.rightPeriod = Word{background};
    return x;
}

void check_config(const EpConfig& x) {
    if (x.leftPeriod.empty() || x.rightPeriod.empty())
        throw InputError("configuration tails must be nonempty");
    auto checkWord = [&](const Word& w) {
        for (std::size_t i = 0; i < w.size(); ++i)
            if (!x.alphabet.contains(w[i])) throw InputError("symbol out of alphabet range");
    };
    checkWord(x.leftPeriod);
    checkWord(x.center);
    checkWord(x.rightPeriod);
}

Symbol sample(const EpConfig& x, std::int64_t i) {
    const std::int64_t lo = x.offset;
    const std::int64_t hi = x.offset + static_cast<std::int64_t>(x.center.size());
    if (i >= lo && i < hi) return x.center[static_cast<std::size_t>(i - lo)];
    if (i < lo) {
        const std::int64_t p = static_cast<std::int64_t>(x.leftPeriod.size());
        const std::int64_t j = (lo - 1 - i) % p;
        return x.leftPeriod[static_cast<std::size_t>(p - 1 - j)];
    }
    const std::int64_t p = static_cast<std::int64_t>(x.rightPeriod.size());
    return x.rightPeriod[static_cast<std::size_t>((i - hi) % p)];
}

namespace {

std::int64_t lcm64(std::int64_t a, std::int64_t b) { return std::lcm(a, b); }

}  // namespace

DistanceExponent distance_exponent(const EpConfig& x, const EpConfig& y) {
    const std::int64_t ex = x.offset + static_cast<std::int64_t>(x.center.size());
    const std::int64_t ey = y.offset + static_cast<std::int64_t>(y.center.size());
    std::int64_t extent = std::max({std::int64_t{0}, std::abs(x.offset), std::abs(y.offset),
                                    std::abs(ex), std::abs(ey)});
    const std::int64_t L =
        lcm64(lcm64(static_cast<std::int64_t>(x.leftPeriod.size()),
                    static_cast<std::int64_t>(y.leftPeriod.size())),
              lcm64(static_cast<std::int64_t>(x.rightPeriod.size()),
                    static_cast<std::int64_t>(y.rightPeriod.size())));
    // Past the widest center, both sides are L-periodic; agreement out to
    // extent + 2L pins every residue on both rays.
    const std::int64_t bound = extent + 2 * L + 2;
    for (std::int64_t i = 0; i <= bound; ++i) {
        if (sample(x, i) != sample(y, i) || sample(x, -i) != sample(y, -i))
            return {false, i};
    }
    return {true, 0};
}

EpConfig normalize(const EpConfig& x) {
    // Primitive tail roots; tiling is anchored at the center boundaries, so
    // taking the root changes nothing the configuration can see.
    const std::int64_t pL =
        static_cast<std::int64_t>(primitive_tiling_period(x.leftPeriod));
    const std::int64_t pR =
        static_cast<std::int64_t>(primitive_tiling_period(x.rightPeriod));

    const std::int64_t o = x.offset;
    const std::int64_t e = x.offset + static_cast<std::int64_t>(x.center.size());
    const std::int64_t L = lcm64(pL, pR);

    // Global pR-periodicity holds iff it holds on [o-L-pR, e): every deeper
    // mismatch lifts into that window by steps of L.
    bool fullyPeriodic = true;
    for (std::int64_t j = o - L - pR; j < e && fullyPeriodic; ++j)
        fullyPeriodic = sample(x, j) == sample(x, j + pR);

    EpConfig out;
    out.alphabet = x.alphabet;

    if (fullyPeriodic) {
        Word w(static_cast<std::size_t>(pR));
        for (std::int64_t t = 0; t < pR; ++t)
            w.set(static_cast<std::size_t>(t), sample(x, t));
        const std::size_t p0 = primitive_tiling_period(w);
        Word root = subword(w, 0, p0);
        out.leftPeriod = root;
        out.center = Word{};
        out.offset = 0;
        out.rightPeriod = root;
        return out;
    }

    // eMin = 1 + the largest j with x_j != x_{j+pR}; exists and is >= o-L-pR+1
    // because the window above contains a mismatch.
    std::int64_t eMin = e;
    while (sample(x, eMin - 1) == sample(x, eMin - 1 + pR)) --eMin;

    // oMax = the largest anchor a <= eMin whose strict past is pL-periodic.
    // Validity is downward closed and min(o, eMin) is valid, so a greedy climb
    // finds it.
    std::int64_t oMax = std::min(o, eMin);
    while (oMax < eMin && sample(x, oMax - pL) == sample(x, oMax)) ++oMax;

    out.leftPeriod = Word(static_cast<std::size_t>(pL));
    for (std::int64_t t = 0; t < pL; ++t)
        out.leftPeriod.set(static_cast<std::size_t>(t), sample(x, oMax - pL + t));
    out.center = Word(static_cast<std::size_t>(eMin - oMax));
    for (std::int64_t t = 0; t < eMin - oMax; ++t)
        out.center.set(static_cast<std::size_t>(t), sample(x, oMax + t));
    out.offset = oMax;
    out.rightPeriod = Word(static_cast<std::size_t>(pR));
    for (std::int64_t t = 0; t < pR; ++t)
        out.rightPeriod.set(static_cast<std::size_t>(t), sample(x, eMin + t));
    return out;
}

bool equals(const EpConfig& x, const EpConfig& y) {
    if (x.alphabet != y.alphabet) return false;
    return normalize(x) == normalize(y);
}

char symbol_to_char(Symbol a) {
    if (a < 10) return static_cast<char>('0' + a);
    return static_cast<char>('A' + (a - 10));
}

Symbol char_to_symbol(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'A' && c <= 'Z') return 10 + (c - 'A');
    throw InputError(std::string("bad symbol character '") + c + "'");
}

std::string format_word(const Word& w, const Alphabet& alphabet) {
    std::string out;
    if (alphabet.q <= 36) {
        out.reserve(w.size());
        for (std::size_t i = 0; i < w.size(); ++i) out.push_back(symbol_to_char(w[i]));
    } else {
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (i) out.push_back(',');
            out += std::to_string(w[i]);
        }
    }
    return out;
}

Word parse_word(const std::string& text, const Alphabet& alphabet) {
    Word out;
    if (text.find(',') != std::string::npos || alphabet.q > 36) {
        if (text.empty()) return out;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            std::size_t next = text.find(',', pos);
            if (next == std::string::npos) next = text.size();
            const std::string piece = text.substr(pos, next - pos);
            if (piece.empty()) throw InputError("empty symbol in word literal");
            int value = 0;
            try {
                value = std::stoi(piece);
            } catch (const std::exception&) {
                throw InputError("bad symbol '" + piece + "' in word literal");
            }
            if (!alphabet.contains(value))
                throw InputError("symbol " + piece + " out of range for alphabet");
            out.push_back(value);
            if (next == text.size()) break;
            pos = next + 1;
        }
        return out;
    }
    for (char c : text) {
        const Symbol a = char_to_symbol(c);
        if (!alphabet.contains(a))
            throw InputError(std::string("symbol '") + c + "' out of range for alphabet");
        out.push_back(a);
    }
    return out;
}

std::string format_config(const EpConfig& x) {
    std::string out = format_word(x.leftPeriod, x.alphabet);
    out += "*|";
    out += format_word(x.center, x.alphabet);
    out += '@';
    out += std::to_string(x.offset);
    out += '|';
    out += format_word(x.rightPeriod, x.alphabet);
    out += '*';
    return out;
}

EpConfig parse_config(const std::string& text, Alphabet alphabet) {
    const std::size_t bar1 = text.find('|');
    const std::size_t bar2 = text.rfind('|');
    if (bar1 == std::string::npos || bar2 == bar1)
        throw InputError("configuration literal needs the form <left>*|<center>@<offset>|<right>*");
    const std::string left = text.substr(0, bar1);
    const std::string mid = text.substr(bar1 + 1, bar2 - bar1 - 1);
    const std::string right = text.substr(bar2 + 1);
    if (left.empty() || left.back() != '*' || right.empty() || right.back() != '*')
        throw InputError("configuration tails must end with '*'");
    const std::size_t at = mid.rfind('@');
    if (at == std::string::npos) throw InputError("configuration center needs '@<offset>'");
    EpConfig x;
    x.alphabet = alphabet;
    x.leftPeriod = parse_word(left.substr(0, left.size() - 1), alphabet);
    x.rightPeriod = parse_word(right.substr(0, right.size() - 1), alphabet);
    x.center = parse_word(mid.substr(0, at), alphabet);
    const std::string offsetText = mid.substr(at + 1);
    try {
        x.offset = std::stoll(offsetText);
    } catch (const std::exception&) {
        throw InputError("bad offset '" + offsetText + "' in configuration literal");
    }
    check_config(x);
    return x;
}

}  // namespace nuca
