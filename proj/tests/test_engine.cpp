#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "nuca/engine.hpp"
#include "testutil.hpp"

using namespace nuca;

TEST_CASE("step matches the pointwise definition") {
    std::mt19937_64 rng(31);
    for (int it = 0; it < 300; ++it) {
        Alphabet a{2 + static_cast<int>(rng() % 2)};
        int r = 1 + static_cast<int>(rng() % 2);
        NuCaSpec spec = testutil::random_periodic_spec(rng, a, r, 2, 3);
        EpConfig x = testutil::random_config(rng, a);
        EpConfig y = step(spec, x);
        CHECK(normalize(y) == y);
        for (std::int64_t i = -50; i <= 50; ++i)
            CHECK(sample(y, i) == testutil::pointwise_image(spec, x, i));
    }
}

TEST_CASE("radius zero steps") {
    Alphabet q3{3};
    NuCaSpec spec = make_uniform_spec(identity_rule_of_radius_zero(q3));
    EpConfig x = make_finite_config(q3, 1, Word{0, 2}, -1);
    CHECK(equals(step(spec, x), x));
}

TEST_CASE("trace rows are the sampled iterates") {
    std::mt19937_64 rng(32);
    for (int it = 0; it < 50; ++it) {
        Alphabet a{2 + static_cast<int>(rng() % 2)};
        NuCaSpec spec = testutil::random_periodic_spec(rng, a, 1, 2, 2);
        EpConfig x = testutil::random_config(rng, a);
        int steps = static_cast<int>(rng() % 6);
        Trace tr = trace(spec, x, -10, 10, steps);
        REQUIRE(tr.a == -10);
        REQUIRE(tr.b == 10);
        REQUIRE(tr.rows.size() == static_cast<std::size_t>(steps) + 1);
        EpConfig cur = x;
        for (std::size_t t = 0; t < tr.rows.size(); ++t) {
            REQUIRE(tr.rows[t].size() == 21);
            for (std::int64_t i = -10; i <= 10; ++i)
                CHECK(tr.rows[t][static_cast<std::size_t>(i + 10)] == sample(cur, i));
            if (t + 1 < tr.rows.size()) cur = step(spec, cur);
        }
    }
}

TEST_CASE("format trace") {
    NuCaSpec id = make_uniform_spec(identity_rule(Alphabet{2}));
    EpConfig x = make_finite_config(Alphabet{2}, 0, Word{1}, 0);
    Trace tr = trace(id, x, -1, 1, 1);
    CHECK(format_trace(tr, Alphabet{2}) == "010\n010\n");
}

TEST_CASE("known orbits") {
    Alphabet q2{2};

    // b -> 1-b everywhere: the two uniform configurations swap.
    LocalRule neg = make_rule(q2, 1, [](const Word& w) { return 1 - w[1]; });
    OrbitReport rep = orbit_analyze(make_uniform_spec(neg), make_uniform_config(q2, 0), 50, 100);
    CHECK(rep.outcome == OrbitReport::Outcome::UltimatelyPeriodic);
    CHECK(rep.preperiod == 0);
    CHECK(rep.period == 2);

    std::mt19937_64 rng(33);
    EpConfig x = testutil::random_config(rng, q2);
    rep = orbit_analyze(make_uniform_spec(identity_rule(q2)), x, 50, 100);
    CHECK(rep.outcome == OrbitReport::Outcome::UltimatelyPeriodic);
    CHECK(rep.preperiod == 0);
    CHECK(rep.period == 1);

    rep = orbit_analyze(make_uniform_spec(constant_rule(q2, 1)), x, 50, 100);
    CHECK(rep.outcome == OrbitReport::Outcome::UltimatelyPeriodic);
    CHECK(rep.preperiod <= 1);
    CHECK(rep.period == 1);

    // A translating configuration never revisits a canonical form.
    EpConfig one = make_finite_config(q2, 0, Word{1}, 0);
    rep = orbit_analyze(make_uniform_spec(left_shift_rule(q2)), one, 40, 1000);
    CHECK(rep.outcome == OrbitReport::Outcome::BudgetExceeded);

    // Growing support exhausts the width budget, never silently truncates.
    rep = orbit_analyze(make_uniform_spec(xor_rule()), one, 1000, 30);
    CHECK(rep.outcome == OrbitReport::Outcome::BudgetExceeded);
    CHECK(rep.maxCenterWidth <= 40);
}

TEST_CASE("assemble config") {
    std::mt19937_64 rng(34);
    for (int it = 0; it < 200; ++it) {
        Alphabet a{2 + static_cast<int>(rng() % 3)};
        EpConfig x = normalize(testutil::random_config(rng, a));
        auto eval = [&](std::int64_t i) { return sample(x, i); };
        EpConfig y = assemble_config(
            a, eval, x.offset - 1, static_cast<std::int64_t>(x.leftPeriod.size()),
            x.offset + static_cast<std::int64_t>(x.center.size()),
            static_cast<std::int64_t>(x.rightPeriod.size()));
        CHECK(y == x);
    }
}
