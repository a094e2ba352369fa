#include "nuca/zoo.hpp"

#include <utility>

#include "nuca/conjugacy.hpp"
#include "nuca/debruijn.hpp"
#include "nuca/engine.hpp"
#include "nuca/errors.hpp"

namespace nuca::zoo {

namespace {

const LocalRule& f_cyclic3() {
    static const LocalRule f = cyclic3_rule();
    return f;
}

void check_ternary(const Word& u) {
    for (std::size_t i = 0; i < u.size(); ++i)
        if (u[i] < 0 || u[i] > 2) throw InputError("word symbol out of {0,1,2}");
}

const char* kind_name(NuCaClassification::Kind k) {
    switch (k) {
        case NuCaClassification::Kind::Equicontinuous: return "equicontinuous";
        case NuCaClassification::Kind::AlmostEquicontinuous: return "almost-equicontinuous";
        case NuCaClassification::Kind::Unknown: return "unknown";
    }
    return "unknown";
}

}  // namespace

LocalRule cyclic3_rule() {
    return make_rule(Alphabet{3}, 1, [](const Word& w) -> Symbol {
        const Symbol x = w[0], y = w[1], z = w[2];
        if (y == 0) return (x == 1 || z == 1) ? 1 : 0;
        if (y == 1) return (x == 2 || z == 2) ? 2 : 1;
        return (x == 1 || z == 1) ? 0 : 2;
    });
}

LocalRule spread2_rule() {
    return make_rule(Alphabet{3}, 1, [](const Word& w) -> Symbol {
        if (w[0] == 2 || w[1] == 2 || w[2] == 2) return 2;
        return w[2];
    });
}

const std::vector<ZooEntry>& zoo_catalog() {
    static const std::vector<ZooEntry> entries = [] {
        using Kind = NuCaClassification::Kind;
        const Alphabet b2{2};
        const LocalRule c0 = constant_rule(b2, 0);
        const LocalRule c1 = constant_rule(b2, 1);
        std::vector<ZooEntry> v;

        v.push_back({"one-at-origin", make_default_spec(c0, {{0, c1}}), false, false,
                     Kind::Equicontinuous,
                     "constant rules; every image is the configuration 0*|1@0|0*"});

        NuCaSpec toward;
        toward.alphabet = b2;
        toward.radius = 1;
        toward.k = 0;
        toward.window = {identity_rule(b2)};
        toward.leftTail = {left_shift_rule(b2)};
        toward.rightTail = {right_shift_rule(b2)};
        check_spec(toward);
        v.push_back({"toward-center", std::move(toward), false, true, Kind::Unknown,
                     "negative cells copy their right neighbor, positive cells their left, "
                     "cell 0 holds; image cells -1,0,1 always agree"});

        NuCaSpec evenOdd;
        evenOdd.alphabet = b2;
        evenOdd.radius = 1;
        evenOdd.k = 0;
        evenOdd.window = {c1};
        evenOdd.leftTail = {c1, c0};
        evenOdd.rightTail = {c1, c0};
        check_spec(evenOdd);
        v.push_back({"even-odd", std::move(evenOdd), false, false, Kind::Unknown,
                     "position parity fixes the image symbol; the image is one checkerboard"});

        v.push_back({"shift-id0",
                     make_default_spec(right_shift_rule(b2), {{0, identity_rule(b2)}}), false,
                     false, Kind::Unknown,
                     "right shift except cell 0 keeps its value; image cells 0 and 1 agree, "
                     "and cell -1 of a preimage is never read"});

        v.push_back({"xor-pin0", make_default_spec(xor_rule(), {{0, c0}}), false, false,
                     Kind::Unknown,
                     "neighbor xor with image cell 0 pinned to 0; injective on configurations "
                     "with finitely many ones"});

        v.push_back({"cyclic3", make_uniform_spec(cyclic3_rule()), false, false,
                     Kind::Unknown, "uniform three-symbol cycle-chasing rule"});

        v.push_back({"cyclic3-pin1",
                     make_default_spec(cyclic3_rule(), {{0, constant_rule(Alphabet{3}, 1)}}),
                     false, false, Kind::Unknown,
                     "cycle-chasing rule with cell 0 pinned to 1; the two half-lines never "
                     "interact"});

        v.push_back({"spread2", make_uniform_spec(spread2_rule()), false, false,
                     Kind::AlmostEquicontinuous,
                     "uniform spreading rule; 2 is a one-cell blocking word"});

        v.push_back({"spread2-pin2",
                     make_default_spec(spread2_rule(), {{0, constant_rule(Alphabet{3}, 2)}}),
                     false, false, Kind::AlmostEquicontinuous,
                     "spreading rule with cell 0 pinned to 2"});
        return v;
    }();
    return entries;
}

const ZooEntry* zoo_find(const std::string& name) {
    for (const ZooEntry& e : zoo_catalog())
        if (e.name == name) return &e;
    return nullptr;
}

bool EntryReport::ok() const {
    for (const EntryCheck& c : checks)
        if (!c.ok) return false;
    return true;
}

EntryReport verify_entry(const ZooEntry& e) {
    EntryReport rep;
    rep.entry = e.name;

    NuCaSpec dec = e.spec;
    if (e.spec.leftTail.size() != 1 || e.spec.rightTail.size() != 1)
        dec = pack_spec(e.spec).spec;

    if (e.surjective) {
        const SurjectivityVerdict v = decide_surjective(dec);
        const bool got = v.kind == SurjectivityVerdict::Kind::Surjective;
        std::string detail = got ? "surjective" : "not surjective";
        if (!got) detail += " (witness " + format_word(v.witnessWord, dec.alphabet) + ")";
        rep.checks.push_back({"surjective", got == *e.surjective, std::move(detail)});
    }

    if (e.injective) {
        const InjectivityVerdict v = decide_injective(dec);
        const bool got = v.kind == InjectivityVerdict::Kind::Injective;
        bool ok = got == *e.injective;
        std::string detail = got ? "injective" : "not injective";
        if (!got) {
            const bool witnessOk = !equals(v.witnessA, v.witnessB) &&
                                   equals(step(dec, v.witnessA), step(dec, v.witnessB));
            ok = ok && witnessOk;
            detail += witnessOk ? " (witness pair replayed)" : " (WITNESS REPLAY FAILED)";
        }
        rep.checks.push_back({"injective", ok, std::move(detail)});
    }

    if (e.classification) {
        const NuCaClassification c = classify_nuca(e.spec);
        rep.checks.push_back({"classification", c.kind == *e.classification,
                              kind_name(c.kind)});
    }

    return rep;
}

RewriteState rewrite_step(const RewriteState& s) {
    if (s.word.empty()) return {Word{}, 1};
    const LocalRule& f = f_cyclic3();
    const Symbol last = s.word[s.word.size() - 1];
    if (s.flag == 0) {
        if (last == 0) return {subword(s.word, 0, s.word.size() - 1), 0};
        if (last == 1) return {subword(s.word, 0, s.word.size() - 1), 1};
        return {extend_word(f, concat(concat(Word{1}, s.word), Word{0})), 0};
    }
    if (last == 0) return {extend_word(f, concat(Word{1}, s.word)), 1};
    if (last == 1) return {subword(s.word, 0, s.word.size() - 1), 1};
    return {extend_word(f, concat(Word{1}, s.word)), 0};
}

std::optional<std::int64_t> rewrite_run(RewriteState s, std::int64_t maxSteps) {
    check_ternary(s.word);
    if (s.flag != 0 && s.flag != 1) throw InputError("rewrite flag must be 0 or 1");
    for (std::int64_t n = 0; n <= maxSteps; ++n) {
        if (s.word.empty() && s.flag == 1) return n;
        s = rewrite_step(s);
    }
    return std::nullopt;
}

std::optional<std::int64_t> ones_fixpoint_steps(const Word& u, std::int64_t maxSteps) {
    check_ternary(u);
    const LocalRule& f = f_cyclic3();
    Word target(u.size() + 1);
    for (std::size_t i = 0; i < target.size(); ++i) target.set(i, 1);
    Word w = concat(u, Word{2});
    for (std::int64_t n = 0; n <= maxSteps; ++n) {
        if (w == target) return n;
        w = extend_word(f, concat(concat(Word{1}, w), Word{0}));
    }
    return std::nullopt;
}

bool forbidden_free(const Word& w) {
    check_ternary(w);
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        const Symbol a = w[i], b = w[i + 1];
        if ((a == 0 && b == 1) || (a == 1 && b == 2) || (a == 2 && b == 0) ||
            (a == 2 && b == 2))
            return false;
    }
    return true;
}

bool forbidden_free_from(const EpConfig& x, std::int64_t i) {
    check_config(x);
    const std::int64_t cEnd = x.offset + static_cast<std::int64_t>(x.center.size());
    const std::int64_t last =
        std::max(i, cEnd) + 2 * static_cast<std::int64_t>(x.rightPeriod.size());
    Word w;
    for (std::int64_t p = i; p <= last + 1; ++p) w.push_back(sample(x, p));
    return forbidden_free(w);
}

bool propagation_check(const EpConfig& x, std::int64_t i, int steps) {
    static const NuCaSpec pinned =
        make_default_spec(cyclic3_rule(), {{0, constant_rule(Alphabet{3}, 1)}});
    EpConfig y = x;
    for (int t = 0; t < steps; ++t) {
        const bool before = forbidden_free_from(y, i + t);
        y = step(pinned, y);
        if (before && !forbidden_free_from(y, i + t + 1)) return false;
    }
    return true;
}

std::optional<std::int64_t> cell_one_settles(const NuCaSpec& spec, const Word& u,
                                             std::int64_t horizon, std::int64_t window) {
    if (horizon < 0 || window <= 0) throw InputError("horizon/window must be positive");
    EpConfig y = make_finite_config(spec.alphabet, 0, u, 0);
    std::int64_t cand = 0;
    for (std::int64_t t = 1; t <= horizon + window; ++t) {
        y = step(spec, y);
        if (sample(y, 1) != 1) {
            cand = t;
            if (cand > horizon) return std::nullopt;
        }
        if (t == cand + window) return cand;
    }
    return std::nullopt;
}

std::optional<std::int64_t> cell_two_recurs(const NuCaSpec& spec, const Word& u,
                                            std::int64_t after, std::int64_t horizon) {
    if (after < 0 || horizon <= after) throw InputError("need 0 <= after < horizon");
    EpConfig y;
    y.alphabet = spec.alphabet;
    y.leftPeriod = Word{0};
    y.center = u;
    y.offset = 0;
    y.rightPeriod = Word{2};
    y = normalize(y);
    for (std::int64_t t = 1; t <= horizon; ++t) {
        y = step(spec, y);
        if (t > after && sample(y, 1) == 2) return t;
    }
    return std::nullopt;
}

}  // namespace nuca::zoo
