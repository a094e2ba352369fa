#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "nuca/conjugacy.hpp"
#include "testutil.hpp"

using namespace nuca;

TEST_CASE("packed alphabet is a bijection") {
    PackedAlphabetMap m = make_packed_alphabet(Alphabet{3}, 2);
    CHECK(m.packed.q == 9);
    CHECK(m.encode(Word{1, 2}) == 5);  // leftmost cell most significant
    CHECK(m.decode(5) == Word{1, 2});
    for (Symbol s = 0; s < 9; ++s) CHECK(m.encode(m.decode(s)) == s);
    for (Symbol a = 0; a < 3; ++a)
        for (Symbol b = 0; b < 3; ++b) CHECK(m.decode(m.encode(Word{a, b})) == Word{a, b});
}

TEST_CASE("pack and unpack configs") {
    std::mt19937_64 rng(41);
    for (int it = 0; it < 300; ++it) {
        Alphabet a{2 + static_cast<int>(rng() % 2)};
        std::int64_t b = 1 + static_cast<std::int64_t>(rng() % 3);
        PackedAlphabetMap m = make_packed_alphabet(a, b);
        EpConfig x = testutil::random_config(rng, a);
        EpConfig px = pack_config(m, x);
        CHECK(equals(unpack_config(m, px), x));
        for (std::int64_t j = -10; j <= 10; ++j) {
            Word block(static_cast<std::size_t>(b));
            for (std::int64_t c = 0; c < b; ++c)
                block.set(static_cast<std::size_t>(c), sample(x, j * b + c));
            CHECK(sample(px, j) == m.encode(block));
        }
    }
}

TEST_CASE("pack_spec is a conjugacy") {
    std::mt19937_64 rng(42);
    for (int it = 0; it < 40; ++it) {
        // Ternary specs keep short tails so the packed table stays inside the budget.
        bool binary = it % 2 == 0;
        Alphabet a{binary ? 2 : 3};
        int r = binary ? 1 + static_cast<int>(rng() % 2) : 1;
        NuCaSpec spec = testutil::random_periodic_spec(rng, a, r, 2, binary ? 3 : 2);
        PackedSpec packed = pack_spec(spec);
        CHECK(packed.spec.radius == 1);
        CHECK(packed.spec.leftTail.size() == 1);
        CHECK(packed.spec.rightTail.size() == 1);

        EpConfig x = testutil::random_config(rng, a);
        EpConfig px = pack_config(packed.map, x);
        for (int t = 0; t < 8; ++t) {
            x = step(spec, x);
            px = step(packed.spec, px);
            CHECK(equals(pack_config(packed.map, x), px));
        }
    }
}

TEST_CASE("pack_spec leaves decidable specs alone") {
    std::mt19937_64 rng(43);
    NuCaSpec spec = testutil::random_period1_spec(rng, Alphabet{2}, 1, 1);
    PackedSpec packed = pack_spec(spec);
    CHECK(packed.map.b == 1);
    CHECK(packed.spec == spec);
}

TEST_CASE("pack_spec budgets") {
    // q^b past the symbol range: q = 300 with a period-2 tail needs b = 2.
    Alphabet big{300};
    NuCaSpec spec = make_uniform_spec(identity_rule_of_radius_zero(big));
    spec.leftTail = {identity_rule_of_radius_zero(big), constant_rule(big, 0, 0)};
    spec.rightTail = spec.leftTail;
    CHECK_THROWS_AS(pack_spec(spec), BudgetError);

    // Table budget: packed alphabet 5^3 = 125 needs a 125^3-entry table.
    Alphabet q5{5};
    NuCaSpec s3 = make_uniform_spec(identity_rule(q5));
    s3.leftTail = {identity_rule(q5), identity_rule(q5), left_shift_rule(q5)};
    s3.rightTail = s3.leftTail;
    CHECK_THROWS_AS(pack_spec(s3, 100000), BudgetError);
    CHECK_NOTHROW(pack_spec(s3));
}

TEST_CASE("embedding into a uniform automaton") {
    std::mt19937_64 rng(44);
    for (int it = 0; it < 60; ++it) {
        Alphabet a{2 + static_cast<int>(rng() % 2)};
        NuCaSpec spec = testutil::random_periodic_spec(rng, a, 1, 2, 2);
        CaEmbedding emb = embed_in_ca(spec);
        CHECK(emb.big.q == a.q * emb.n);
        for (std::int64_t i = -10; i <= 10; ++i)
            CHECK(emb.rules[static_cast<std::size_t>(emb.rule_index_at(i))] == rule_at(spec, i));

        NuCaSpec ca = make_uniform_spec(emb.ca);
        EpConfig x = testutil::random_config(rng, a);
        EpConfig ann = emb.annotate(x);
        CHECK(equals(emb.project(ann), x));
        for (int t = 0; t < 4; ++t) {
            x = step(spec, x);
            ann = step(ca, ann);
            CHECK(equals(emb.annotate(x), ann));
            CHECK(equals(emb.project(ann), x));
        }
    }
}

TEST_CASE("embedding numbers only distinct rules") {
    Alphabet q2{2};
    NuCaSpec spec = make_default_spec(right_shift_rule(q2), {{0, identity_rule(q2)}});
    CaEmbedding emb = embed_in_ca(spec);
    CHECK(emb.n == 2);
    CHECK(emb.big.q == 4);
    CHECK(emb.rule_index_at(0) != emb.rule_index_at(5));
    CHECK(emb.rule_index_at(3) == emb.rule_index_at(-3));
}
