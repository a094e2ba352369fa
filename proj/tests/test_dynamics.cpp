#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <optional>
#include <random>

#include "doctest.h"
#include "nuca/dynamics.hpp"
#include "nuca/engine.hpp"
#include "nuca/zoo.hpp"
#include "testutil.hpp"

using namespace nuca;

namespace {

// Rules equal to f on cells [0, len), arbitrary elsewhere: the assignments a
// certificate claims to survive.
NuCaSpec random_agreeing_spec(std::mt19937_64& rng, const LocalRule& f, std::size_t len) {
    NuCaSpec spec;
    spec.alphabet = f.alphabet;
    spec.radius = f.radius;
    spec.k = static_cast<int>(len) + 2;
    for (std::int64_t i = -spec.k; i <= spec.k; ++i)
        spec.window.push_back(0 <= i && i < static_cast<std::int64_t>(len)
                                  ? f
                                  : testutil::mixed_rule(rng, f.alphabet, f.radius));
    spec.leftTail.push_back(testutil::mixed_rule(rng, f.alphabet, f.radius));
    spec.rightTail.push_back(testutil::mixed_rule(rng, f.alphabet, f.radius));
    return spec;
}

EpConfig config_in_cylinder(std::mt19937_64& rng, Alphabet a, const Word& u) {
    EpConfig x;
    x.alphabet = a;
    x.leftPeriod = testutil::random_nonempty_word(rng, a, 3);
    x.rightPeriod = testutil::random_nonempty_word(rng, a, 3);
    Word left = testutil::random_word(rng, a, rng() % 4);
    Word right = testutil::random_word(rng, a, rng() % 4);
    x.center = concat(left, concat(u, right));
    x.offset = -static_cast<std::int64_t>(left.size());
    return x;
}

Word expected_column(const BlockingCertificate& c, std::int64_t t) {
    std::int64_t pre = static_cast<std::int64_t>(c.columnPreperiod.size());
    if (t < pre) return c.columnPreperiod[static_cast<std::size_t>(t)];
    return c.columnPeriod[static_cast<std::size_t>((t - pre) %
                                                   static_cast<std::int64_t>(c.columnPeriod.size()))];
}

// The certified column must come out of the engine whatever the rules around
// the word do.
void check_certificate_against(const NuCaSpec& spec, const EpConfig& x,
                               const BlockingCertificate& c, std::int64_t steps) {
    Trace tr = trace(spec, x, c.offset, c.offset + c.width - 1, static_cast<int>(steps));
    for (std::int64_t t = 0; t <= steps; ++t)
        CHECK(tr.rows[static_cast<std::size_t>(t)] == expected_column(c, t));
}

void check_refutation(const LocalRule& f, const BlockingRefutation& r) {
    NuCaSpec spec = make_uniform_spec(f);
    auto embed = [&](const Word& l, const Word& rt) {
        Word center = concat(l, concat(r.word, rt));
        return make_finite_config(f.alphabet, 0, center, -static_cast<std::int64_t>(l.size()));
    };
    EpConfig a0 = embed(r.leftA, r.rightA);
    EpConfig b0 = embed(r.leftB, r.rightB);
    REQUIRE(r.splitTime.size() == static_cast<std::size_t>(r.word.size()) - r.width + 1);
    for (std::size_t d = 0; d < r.splitTime.size(); ++d) {
        std::int64_t T = r.splitTime[d];
        std::int64_t lo = static_cast<std::int64_t>(d);
        Trace ta = trace(spec, a0, lo, lo + r.width - 1, static_cast<int>(T));
        Trace tb = trace(spec, b0, lo, lo + r.width - 1, static_cast<int>(T));
        for (std::int64_t t = 0; t < T; ++t)
            CHECK(ta.rows[static_cast<std::size_t>(t)] == tb.rows[static_cast<std::size_t>(t)]);
        CHECK(ta.rows[static_cast<std::size_t>(T)] != tb.rows[static_cast<std::size_t>(T)]);
    }
}

}  // namespace

TEST_CASE("simple certificates") {
    Alphabet q2{2};
    std::optional<BlockingCertificate> c = certify_strongly_blocking(identity_rule(q2), Word{0}, 1);
    REQUIRE(c.has_value());
    CHECK(c->offset == 0);
    CHECK(c->columnPreperiod.empty());
    CHECK(c->columnPeriod == std::vector<Word>{Word{0}});

    c = certify_strongly_blocking(constant_rule(q2, 0), Word{1}, 1);
    REQUIRE(c.has_value());
    CHECK(c->columnPreperiod.size() <= 1);
    CHECK(c->columnPeriod == std::vector<Word>{Word{0}});

    c = certify_strongly_blocking(zoo::spread2_rule(), Word{2}, 1);
    REQUIRE(c.has_value());
    CHECK(c->offset == 0);
    CHECK(c->columnPreperiod.empty());
    CHECK(c->columnPeriod == std::vector<Word>{Word{2}});

    CHECK_THROWS_AS(certify_strongly_blocking(identity_rule(q2), Word{0}, 2), InputError);
    CHECK_THROWS_AS(certify_strongly_blocking(identity_rule(q2), Word{0}, 0), InputError);
    // Reachable sets over a 12-cell ternary word cannot fit the default budget.
    CHECK_THROWS_AS(certify_strongly_blocking(zoo::cyclic3_rule(),
                                              repeat_word(Word{2, 0, 2}, 4), 1, 1 << 10),
                    BudgetError);
}

TEST_CASE("certify and refute never both fire") {
    std::mt19937_64 rng(61);
    int certified = 0, refuted = 0;
    for (int it = 0; it < 150; ++it) {
        Alphabet a{2 + static_cast<int>(rng() % 2)};
        LocalRule f = testutil::mixed_rule(rng, a, 1);
        Word u = testutil::random_nonempty_word(rng, a, 3);
        std::optional<BlockingCertificate> c = certify_strongly_blocking(f, u, 1);
        std::optional<BlockingRefutation> r = refute_blocking(f, u, 1, 12, 3);
        CHECK(!(c.has_value() && r.has_value()));
        if (c) {
            ++certified;
            // Survives arbitrary surrounding rules, by construction of the
            // agreeing specs.
            std::int64_t pre = static_cast<std::int64_t>(c->columnPreperiod.size());
            std::int64_t per = static_cast<std::int64_t>(c->columnPeriod.size());
            for (int rep = 0; rep < 4; ++rep) {
                NuCaSpec spec = random_agreeing_spec(rng, f, u.size());
                EpConfig x = config_in_cylinder(rng, a, u);
                check_certificate_against(spec, x, *c, pre + 2 * per + 2);
            }
        }
        if (r) {
            ++refuted;
            check_refutation(f, *r);
        }
    }
    CHECK(certified > 5);
    CHECK(refuted > 5);
}

TEST_CASE("shift refutation matches the engine") {
    std::optional<BlockingRefutation> r =
        refute_blocking(left_shift_rule(Alphabet{2}), Word{0, 0}, 1, 6, 3);
    REQUIRE(r.has_value());
    CHECK(format_word(r->leftB, Alphabet{2}) == "000");
    CHECK(format_word(r->rightB, Alphabet{2}) == "001");
    check_refutation(left_shift_rule(Alphabet{2}), *r);
}

TEST_CASE("the three-symbol cycle word stays open") {
    // "202" pins its column under the cycle rule itself, but an adversarial
    // neighbor rule can stream fresh symbols through the left cell; no
    // certificate exists, and no uniform-rule context pair refutes it either.
    LocalRule f = zoo::cyclic3_rule();
    Word u{2, 0, 2};
    CHECK(!certify_strongly_blocking(f, u, 1).has_value());
    CHECK(!refute_blocking(f, u, 1, 20, 4).has_value());
}

TEST_CASE("blocking word search") {
    std::optional<BlockingWordFind> found = find_strongly_blocking(zoo::spread2_rule(), 1, 4);
    REQUIRE(found.has_value());
    CHECK(found->word == Word{2});

    CHECK(!find_strongly_blocking(left_shift_rule(Alphabet{2}), 1, 4).has_value());
    CHECK(!find_strongly_blocking(xor_rule(), 1, 4).has_value());

    found = find_strongly_blocking(identity_rule(Alphabet{2}), 1, 4);
    REQUIRE(found.has_value());
    CHECK(found->word == Word{0});
}

TEST_CASE("ultimate periodicity of single rules") {
    Alphabet q2{2};
    std::optional<EquicontinuityWitness> w = equicontinuity_search(identity_rule(q2), 3, 3);
    REQUIRE(w.has_value());
    CHECK(w->preperiod == 0);
    CHECK(w->period == 1);

    w = equicontinuity_search(constant_rule(q2, 0), 3, 3);
    REQUIRE(w.has_value());
    CHECK(w->preperiod == 1);
    CHECK(w->period == 1);

    LocalRule neg = make_rule(q2, 1, [](const Word& v) { return 1 - v[1]; });
    w = equicontinuity_search(neg, 3, 3);
    REQUIRE(w.has_value());
    CHECK(w->preperiod == 0);
    CHECK(w->period == 2);

    CHECK(!equicontinuity_search(left_shift_rule(q2), 3, 3).has_value());
    CHECK(!equicontinuity_search(xor_rule(), 3, 3).has_value());

    // The witness is a statement about the global map; the engine must agree.
    std::mt19937_64 rng(62);
    NuCaSpec negSpec = make_uniform_spec(neg);
    for (int it = 0; it < 50; ++it) {
        EpConfig x = testutil::random_config(rng, q2);
        EpConfig a = x;
        for (int t = 0; t < 2; ++t) a = step(negSpec, a);  // q + p steps
        CHECK(equals(a, x));                               // q = 0
    }
}

TEST_CASE("classify single rules") {
    Alphabet q2{2};
    CaClassification c = classify_ca(identity_rule(q2));
    CHECK(c.kind == CaClassification::Kind::Equicontinuous);
    CHECK(c.preperiod == 0);
    CHECK(c.period == 1);
    CHECK(c.blockLen == 3);

    c = classify_ca(constant_rule(q2, 1));
    CHECK(c.kind == CaClassification::Kind::Equicontinuous);
    CHECK(c.preperiod == 1);
    CHECK(c.period == 1);

    c = classify_ca(zoo::spread2_rule());
    CHECK(c.kind == CaClassification::Kind::AlmostEquicontinuousCert);
    CHECK(c.blockingWord == Word{2});
    REQUIRE(c.certificate.has_value());

    c = classify_ca(left_shift_rule(q2));
    CHECK(c.kind == CaClassification::Kind::NoBlockingWordUpTo);
    CHECK(c.maxLen == 4);
    CHECK(c.horizon == 30);

    c = classify_ca(zoo::cyclic3_rule());
    CHECK(c.kind == CaClassification::Kind::NoBlockingWordUpTo);
}

TEST_CASE("classify rule families") {
    NuCaClassification n = classify_nuca(make_uniform_spec(identity_rule(Alphabet{2})));
    CHECK(n.kind == NuCaClassification::Kind::Equicontinuous);
    CHECK(n.singleDefault);
    CHECK(n.compatibleLen == 3);

    const zoo::ZooEntry* z8 = zoo::zoo_find("spread2-pin2");
    REQUIRE(z8 != nullptr);
    n = classify_nuca(z8->spec);
    CHECK(n.kind == NuCaClassification::Kind::AlmostEquicontinuous);
    CHECK(n.blockingWord == Word{2});
    CHECK(n.compatibleLen == 1);
    REQUIRE(n.certificate.has_value());

    const zoo::ZooEntry* z2 = zoo::zoo_find("toward-center");
    REQUIRE(z2 != nullptr);
    n = classify_nuca(z2->spec);
    CHECK(n.kind == NuCaClassification::Kind::Unknown);
    CHECK(!n.singleDefault);

    const zoo::ZooEntry* z4 = zoo::zoo_find("shift-id0");
    REQUIRE(z4 != nullptr);
    n = classify_nuca(z4->spec);
    CHECK(n.kind == NuCaClassification::Kind::Unknown);
    CHECK(n.singleDefault);
}

TEST_CASE("global ultimate periodicity sampling") {
    Alphabet q2{2};
    NuCaSpec pinned = make_default_spec(identity_rule(q2), {{0, constant_rule(q2, 1)}});
    CaClassification idCls = classify_ca(identity_rule(q2));
    UltimatePeriodicityReport rep = detect_global_ultimate_periodicity(pinned, idCls, 10);
    CHECK(rep.kind == UltimatePeriodicityReport::Kind::Verified);
    CHECK(rep.preperiod <= 1);
    CHECK(rep.period == 1);
    CHECK(rep.samples == 10);

    LocalRule neg = make_rule(q2, 1, [](const Word& v) { return 1 - v[1]; });
    NuCaSpec negPinned = make_default_spec(neg, {{0, constant_rule(q2, 0)}});
    rep = detect_global_ultimate_periodicity(negPinned, classify_ca(neg), 12);
    CHECK(rep.kind == UltimatePeriodicityReport::Kind::Verified);
    CHECK(rep.preperiod <= 1);
    CHECK(rep.period == 2);

    NuCaSpec drift = make_default_spec(left_shift_rule(q2), {{0, identity_rule(q2)}});
    rep = detect_global_ultimate_periodicity(drift, classify_ca(left_shift_rule(q2)), 5);
    CHECK(rep.kind == UltimatePeriodicityReport::Kind::Inconclusive);
}
