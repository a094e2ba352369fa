#include "nuca/engine.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

namespace nuca {

EpConfig assemble_config(Alphabet alphabet, const std::function<Symbol(std::int64_t)>& eval,
                         std::int64_t tl, std::int64_t PL, std::int64_t tr, std::int64_t PR) {
    EpConfig y;
    y.alphabet = alphabet;
    y.offset = tl - PL + 1;
    y.center = Word(static_cast<std::size_t>(tr + PR - y.offset));
    for (std::int64_t i = y.offset; i < tr + PR; ++i)
        y.center.set(static_cast<std::size_t>(i - y.offset), eval(i));
    y.leftPeriod = Word(static_cast<std::size_t>(PL));
    for (std::int64_t t = 0; t < PL; ++t)
        y.leftPeriod.set(static_cast<std::size_t>(t), eval(y.offset - PL + t));
    y.rightPeriod = Word(static_cast<std::size_t>(PR));
    for (std::int64_t t = 0; t < PR; ++t)
        y.rightPeriod.set(static_cast<std::size_t>(t), eval(tr + PR + t));
    return normalize(y);
}

EpConfig step(const NuCaSpec& spec, const EpConfig& x) {
    if (spec.alphabet != x.alphabet) throw InputError("spec and configuration alphabets differ");
    const std::int64_t r = spec.radius;
    const std::int64_t k = spec.k;
    const std::int64_t e = x.offset + static_cast<std::int64_t>(x.center.size());
    // Beyond these thresholds both the rule family and the neighborhood
    // contents repeat, so the image does too.
    const std::int64_t PL = std::lcm(static_cast<std::int64_t>(spec.leftTail.size()),
                                     static_cast<std::int64_t>(x.leftPeriod.size()));
    const std::int64_t PR = std::lcm(static_cast<std::int64_t>(spec.rightTail.size()),
                                     static_cast<std::int64_t>(x.rightPeriod.size()));
    const std::int64_t tl = std::min(-k - 1, x.offset - r - 1);
    const std::int64_t tr = std::max(k + 1, e + r);
    Word nb(static_cast<std::size_t>(2 * r + 1));
    auto eval = [&](std::int64_t i) {
        for (std::int64_t d = -r; d <= r; ++d)
            nb.set(static_cast<std::size_t>(d + r), sample(x, i + d));
        return apply(rule_at(spec, i), nb);
    };
    return assemble_config(spec.alphabet, eval, tl, PL, tr, PR);
}

Trace trace(const NuCaSpec& spec, const EpConfig& x, std::int64_t a, std::int64_t b, int steps) {
    if (a > b) throw InputError("trace window must satisfy a <= b");
    Trace tr;
    tr.a = a;
    tr.b = b;
    EpConfig cur = x;
    for (int t = 0; t <= steps; ++t) {
        Word row(static_cast<std::size_t>(b - a + 1));
        for (std::int64_t i = a; i <= b; ++i)
            row.set(static_cast<std::size_t>(i - a), sample(cur, i));
        tr.rows.push_back(std::move(row));
        if (t < steps) cur = step(spec, cur);
    }
    return tr;
}

OrbitReport orbit_analyze(const NuCaSpec& spec, const EpConfig& x, int maxSteps,
                          std::int64_t maxCenterWidth) {
    OrbitReport report;
    std::map<EpConfig, std::int64_t> seen;
    EpConfig cur = normalize(x);
    for (std::int64_t t = 0;; ++t) {
        report.maxCenterWidth =
            std::max(report.maxCenterWidth, static_cast<std::int64_t>(cur.center.size()));
        auto [it, fresh] = seen.emplace(cur, t);
        if (!fresh) {
            report.outcome = OrbitReport::Outcome::UltimatelyPeriodic;
            report.preperiod = it->second;
            report.period = t - it->second;
            report.steps = t;
            return report;
        }
        if (t >= maxSteps || static_cast<std::int64_t>(cur.center.size()) > maxCenterWidth) {
            report.outcome = OrbitReport::Outcome::BudgetExceeded;
            report.steps = t;
            return report;
        }
        cur = step(spec, cur);
    }
}

std::string format_trace(const Trace& tr, const Alphabet& alphabet) {
    std::string out;
    for (const Word& row : tr.rows) {
        out += format_word(row, alphabet);
        out += '\n';
    }
    return out;
}

}  // namespace nuca
