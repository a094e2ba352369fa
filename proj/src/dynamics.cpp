#include "nuca/dynamics.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <string>

#include "nuca/engine.hpp"

namespace nuca {

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

std::int64_t pow_int(std::int64_t base, std::int64_t exp) {
    std::int64_t v = 1;
    while (exp-- > 0) v *= base;
    return v;
}

// One adversarial step: every context pair in A^r x A^r around every word.
std::set<Word> adversarial_successors(const LocalRule& f, const std::set<Word>& cur,
                                      std::size_t n) {
    const int r = f.radius;
    const int q = f.alphabet.q;
    std::set<Word> next;
    Word ext(n + 2 * static_cast<std::size_t>(r));
    Word ctx(2 * static_cast<std::size_t>(r));
    for (const Word& w : cur) {
        for (std::size_t i = 0; i < n; ++i) ext.set(static_cast<std::size_t>(r) + i, w[i]);
        std::fill(ctx.syms.begin(), ctx.syms.end(), 0);
        do {
            for (int j = 0; j < r; ++j) {
                ext.set(static_cast<std::size_t>(j), ctx[static_cast<std::size_t>(j)]);
                ext.set(static_cast<std::size_t>(r) + n + static_cast<std::size_t>(j),
                        ctx[static_cast<std::size_t>(r + j)]);
            }
            next.insert(extend_word(f, ext));
        } while (next_word(ctx, q));
    }
    return next;
}

bool column_pinned(const std::vector<std::set<Word>>& trace, std::int64_t d, std::int64_t s) {
    for (const auto& states : trace) {
        const Word first = subword(*states.begin(), static_cast<std::size_t>(d),
                                   static_cast<std::size_t>(s));
        for (const Word& w : states)
            if (subword(w, static_cast<std::size_t>(d), static_cast<std::size_t>(s)) != first)
                return false;
    }
    return true;
}

}  // namespace

std::optional<BlockingCertificate> certify_strongly_blocking(const LocalRule& f, const Word& u,
                                                             std::int64_t s,
                                                             std::int64_t setBudget) {
    const int q = f.alphabet.q;
    if (s < 1 || s > static_cast<std::int64_t>(u.size()))
        throw InputError("column width must lie in [1, |u|]");
    for (std::size_t i = 0; i < u.size(); ++i)
        if (!f.alphabet.contains(u[i])) throw InputError("word symbol out of range");
    std::int64_t space = 1;
    for (std::size_t i = 0; i < u.size(); ++i) {
        space *= q;
        if (space > setBudget)
            throw BudgetError("reachable-set space q^" + std::to_string(u.size()) +
                              " exceeds the set budget");
    }

    // Deterministic set sequence over subsets of A^|u|: run to the first
    // repeat, giving the eventual cycle.
    std::vector<std::set<Word>> trace;
    std::map<std::set<Word>, std::int64_t> seen;
    std::set<Word> cur{u};
    std::int64_t pre = 0, per = 0;
    while (true) {
        auto [it, fresh] = seen.emplace(cur, static_cast<std::int64_t>(trace.size()));
        if (!fresh) {
            pre = it->second;
            per = static_cast<std::int64_t>(trace.size()) - pre;
            break;
        }
        trace.push_back(cur);
        if (static_cast<std::int64_t>(trace.size()) > setBudget)
            throw BudgetError("reachable-set iteration exceeds the set budget");
        cur = adversarial_successors(f, cur, u.size());
    }

    for (std::int64_t d = 0; d + s <= static_cast<std::int64_t>(u.size()); ++d) {
        if (!column_pinned(trace, d, s)) continue;
        BlockingCertificate cert;
        cert.word = u;
        cert.width = s;
        cert.offset = d;
        for (std::int64_t t = 0; t < pre + per; ++t) {
            Word col = subword(*trace[static_cast<std::size_t>(t)].begin(),
                               static_cast<std::size_t>(d), static_cast<std::size_t>(s));
            if (t < pre)
                cert.columnPreperiod.push_back(col);
            else
                cert.columnPeriod.push_back(col);
            cert.reachableSetTrace.emplace_back(trace[static_cast<std::size_t>(t)].begin(),
                                                trace[static_cast<std::size_t>(t)].end());
        }
        return cert;
    }
    return std::nullopt;
}

std::optional<BlockingRefutation> refute_blocking(const LocalRule& f, const Word& u,
                                                  std::int64_t s, std::int64_t horizon,
                                                  std::int64_t padding) {
    const int q = f.alphabet.q;
    const std::int64_t r = f.radius;
    if (s < 1 || s > static_cast<std::int64_t>(u.size()))
        throw InputError("column width must lie in [1, |u|]");
    const std::int64_t m = std::max<std::int64_t>(0, padding);
    const std::int64_t T = std::max<std::int64_t>(0, horizon);
    const std::int64_t offsets = static_cast<std::int64_t>(u.size()) - s + 1;

    // Light-cone buffer: compared cells stay exact for T steps under the
    // implicit all-zero continuation.
    const std::int64_t W = static_cast<std::int64_t>(u.size()) + 2 * (m + r * T);
    const std::int64_t base = m + r * T;
    const std::int64_t qpow2r = pow_int(q, 2 * r);
    auto evolve = [&](const std::vector<Symbol>& a, std::vector<Symbol>& b) {
        b = a;
        std::int64_t idx = 0;
        for (std::int64_t j = 0; j < 2 * r && j < W; ++j)
            idx = idx * q + a[static_cast<std::size_t>(j)];
        for (std::int64_t i = r; i + r < W; ++i) {
            idx = idx * q + a[static_cast<std::size_t>(i + r)];
            b[static_cast<std::size_t>(i)] = f.table[static_cast<std::size_t>(idx)];
            idx -= a[static_cast<std::size_t>(i - r)] * qpow2r;
        }
    };

    std::vector<std::vector<Symbol>> ref(static_cast<std::size_t>(T) + 1,
                                         std::vector<Symbol>(static_cast<std::size_t>(W), 0));
    for (std::size_t i = 0; i < u.size(); ++i)
        ref[0][static_cast<std::size_t>(base) + i] = u[i];
    for (std::int64_t t = 0; t < T; ++t)
        evolve(ref[static_cast<std::size_t>(t)], ref[static_cast<std::size_t>(t) + 1]);

    Word ctx(2 * static_cast<std::size_t>(m));
    std::vector<Symbol> cur, nxt;
    do {
        bool zero = true;
        for (std::size_t i = 0; i < ctx.size(); ++i) zero = zero && ctx[i] == 0;
        if (zero) continue;  // the reference itself
        cur = ref[0];
        for (std::int64_t j = 0; j < m; ++j) {
            cur[static_cast<std::size_t>(base - m + j)] = ctx[static_cast<std::size_t>(j)];
            cur[static_cast<std::size_t>(base) + u.size() + static_cast<std::size_t>(j)] =
                ctx[static_cast<std::size_t>(m + j)];
        }
        std::vector<std::int64_t> split(static_cast<std::size_t>(offsets), -1);
        std::int64_t alive = offsets;
        for (std::int64_t t = 1; t <= T && alive > 0; ++t) {
            evolve(cur, nxt);
            cur.swap(nxt);
            for (std::int64_t d = 0; d < offsets; ++d) {
                if (split[static_cast<std::size_t>(d)] >= 0) continue;
                for (std::int64_t i = 0; i < s; ++i) {
                    if (cur[static_cast<std::size_t>(base + d + i)] !=
                        ref[static_cast<std::size_t>(t)][static_cast<std::size_t>(base + d + i)]) {
                        split[static_cast<std::size_t>(d)] = t;
                        --alive;
                        break;
                    }
                }
            }
        }
        if (alive == 0) {
            BlockingRefutation out;
            out.word = u;
            out.width = s;
            out.leftA = Word(static_cast<std::size_t>(m));
            out.rightA = Word(static_cast<std::size_t>(m));
            out.leftB = subword(ctx, 0, static_cast<std::size_t>(m));
            out.rightB = subword(ctx, static_cast<std::size_t>(m), static_cast<std::size_t>(m));
            out.splitTime = std::move(split);
            return out;
        }
    } while (next_word(ctx, q));
    return std::nullopt;
}

std::optional<BlockingWordFind> find_strongly_blocking(const LocalRule& f, std::int64_t s,
                                                       std::int64_t maxLen,
                                                       std::int64_t setBudget) {
    for (std::int64_t len = std::max<std::int64_t>(s, 1); len <= maxLen; ++len) {
        Word w(static_cast<std::size_t>(len));
        do {
            auto cert = certify_strongly_blocking(f, w, s, setBudget);
            if (cert) return BlockingWordFind{w, *cert};
        } while (next_word(w, f.alphabet.q));
    }
    return std::nullopt;
}

std::optional<EquicontinuityWitness> equicontinuity_search(const LocalRule& f, std::int64_t maxQ,
                                                           std::int64_t maxP,
                                                           std::int64_t tableBudget) {
    const int q = f.alphabet.q;
    const std::int64_t r = f.radius;
    // f^(q+p) and f^q agree on every neighborhood of the former iff
    // F^(q+p) = F^q: indices project by dropping pr cells each side.
    auto holds = [&](std::int64_t qq, std::int64_t pp) {
        const LocalRule fqp = self_compose(f, static_cast<int>(qq + pp), tableBudget);
        const LocalRule fq = self_compose(f, static_cast<int>(qq), tableBudget);
        const std::int64_t shift = pow_int(q, pp * r);
        const std::int64_t width = pow_int(q, 2 * qq * r + 1);
        for (std::size_t i = 0; i < fqp.table.size(); ++i) {
            const std::int64_t sub = (static_cast<std::int64_t>(i) / shift) % width;
            if (fqp.table[i] != fq.table[static_cast<std::size_t>(sub)]) return false;
        }
        return true;
    };
    for (std::int64_t total = 1; total <= maxQ + maxP; ++total) {
        const std::int64_t lo = std::max<std::int64_t>(0, total - maxP);
        const std::int64_t hi = std::min(maxQ, total - 1);
        for (std::int64_t qq = lo; qq <= hi; ++qq)
            if (holds(qq, total - qq)) return EquicontinuityWitness{qq, total - qq};
    }
    return std::nullopt;
}

CaClassification classify_ca(const LocalRule& f, const ClassifyBounds& bounds) {
    CaClassification out;
    const std::int64_t r = f.radius;
    auto es = equicontinuity_search(f, bounds.maxQ, bounds.maxP, bounds.tableBudget);
    if (es) {
        out.kind = CaClassification::Kind::Equicontinuous;
        out.preperiod = es->preperiod;
        out.period = es->period;
        out.blockLen = (2 * es->period + 2 * es->preperiod + 1) * r;
        if (r >= 1) {
            // F^(q+p) = F^q pins the central width-r column of every word of
            // length blockLen; a miss here would contradict the exhaustive
            // search above.
            Word w(static_cast<std::size_t>(out.blockLen));
            do {
                if (!certify_strongly_blocking(f, w, r, bounds.setBudget))
                    throw std::logic_error("ultimately periodic rule with uncertified block word");
            } while (next_word(w, f.alphabet.q));
        }
        return out;
    }
    auto fb = find_strongly_blocking(f, std::max<std::int64_t>(r, 1), bounds.maxWordLen,
                                     bounds.setBudget);
    if (fb) {
        out.kind = CaClassification::Kind::AlmostEquicontinuousCert;
        out.blockingWord = fb->word;
        out.certificate = std::move(fb->certificate);
        return out;
    }
    out.kind = CaClassification::Kind::NoBlockingWordUpTo;
    out.maxLen = bounds.maxWordLen;
    out.horizon = bounds.horizon;
    return out;
}

NuCaClassification classify_nuca(const NuCaSpec& spec, const ClassifyBounds& bounds) {
    check_spec(spec);
    const NuCaSpec canon = canonical_spec(spec);
    NuCaClassification out;
    out.singleDefault = canon.leftTail.size() == 1 && canon.rightTail.size() == 1 &&
                        canon.leftTail[0] == canon.rightTail[0];
    if (!out.singleDefault) return out;  // mixed defaults: no theorem applies
    const LocalRule& f = canon.rightTail[0];
    const std::int64_t r = canon.radius;

    CaClassification c = classify_ca(f, bounds);
    out.defaultClassification = c;
    if (c.kind == CaClassification::Kind::Equicontinuous &&
        is_n_compatible(canon, f, c.blockLen)) {
        out.kind = NuCaClassification::Kind::Equicontinuous;
        out.compatibleLen = c.blockLen;
        return out;
    }

    std::optional<BlockingWordFind> fb;
    if (c.kind == CaClassification::Kind::AlmostEquicontinuousCert)
        fb = BlockingWordFind{c.blockingWord, *c.certificate};
    else if (c.kind == CaClassification::Kind::Equicontinuous)
        fb = find_strongly_blocking(f, std::max<std::int64_t>(r, 1), bounds.maxWordLen,
                                    bounds.setBudget);
    if (fb && is_n_compatible(canon, f, static_cast<std::int64_t>(fb->word.size()))) {
        out.kind = NuCaClassification::Kind::AlmostEquicontinuous;
        out.blockingWord = fb->word;
        out.compatibleLen = static_cast<std::int64_t>(fb->word.size());
        out.certificate = std::move(fb->certificate);
        return out;
    }
    return out;
}

UltimatePeriodicityReport detect_global_ultimate_periodicity(
    const NuCaSpec& spec, const CaClassification& defaultClassification,
    std::int64_t sampleBudget, std::uint64_t seed) {
    check_spec(spec);
    UltimatePeriodicityReport rep;
    const NuCaClass cls = class_of(spec);
    if (cls != NuCaClass::UniformCA && cls != NuCaClass::DefaultPerturbed) return rep;
    if (defaultClassification.kind != CaClassification::Kind::Equicontinuous) return rep;

    const int q = spec.alphabet.q;
    std::mt19937_64 rng(seed);
    auto rand_word = [&](std::size_t len) {
        Word w(len);
        for (std::size_t i = 0; i < len; ++i)
            w.set(i, static_cast<Symbol>(rng() % static_cast<std::uint64_t>(q)));
        return w;
    };
    const int maxSteps = static_cast<int>(std::min<std::int64_t>(
        4096, 64 + 8 * (defaultClassification.preperiod + defaultClassification.period +
                        spec.k + spec.radius + 2)));
    std::int64_t qmax = 0, plcm = 1;
    for (std::int64_t n = 0; n < sampleBudget; ++n) {
        EpConfig x;
        x.alphabet = spec.alphabet;
        x.leftPeriod = rand_word(1 + static_cast<std::size_t>(rng() % 2));
        x.rightPeriod = rand_word(1 + static_cast<std::size_t>(rng() % 2));
        x.center = rand_word(static_cast<std::size_t>(rng() % 7));
        x.offset = static_cast<std::int64_t>(rng() % 9) - 4;
        x = normalize(x);
        const OrbitReport orb = orbit_analyze(spec, x, maxSteps, std::int64_t{1} << 14);
        if (orb.outcome != OrbitReport::Outcome::UltimatelyPeriodic) return rep;
        qmax = std::max(qmax, orb.preperiod);
        plcm = std::lcm(plcm, orb.period);
    }
    rep.kind = UltimatePeriodicityReport::Kind::Verified;
    rep.preperiod = qmax;
    rep.period = plcm;
    rep.samples = sampleBudget;
    return rep;
}

}  // namespace nuca
