#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "nuca/rules.hpp"
#include "testutil.hpp"

using namespace nuca;

namespace {

LocalRule rule_from_table_index(Alphabet a, int radius, std::uint64_t t) {
    std::int64_t n = rule_table_size(a, radius);
    LocalRule f{a, radius, Word(static_cast<std::size_t>(n))};
    for (std::int64_t i = 0; i < n; ++i) {
        f.table.set(static_cast<std::size_t>(i), static_cast<Symbol>(t % a.q));
        t /= static_cast<std::uint64_t>(a.q);
    }
    return f;
}

}  // namespace

TEST_CASE("table indexing convention") {
    // Leftmost neighborhood cell is the most significant table digit.
    Alphabet q3{3};
    LocalRule f = make_rule(q3, 1, [](const Word& w) {
        return static_cast<Symbol>((w[0] * 9 + w[1] * 3 + w[2]) % 3);
    });
    REQUIRE(f.table.size() == 27);
    for (Symbol a = 0; a < 3; ++a)
        for (Symbol b = 0; b < 3; ++b)
            for (Symbol c = 0; c < 3; ++c) {
                CHECK(apply(f, Word{a, b, c}) == (a * 9 + b * 3 + c) % 3);
                CHECK(f.table[static_cast<std::size_t>(a * 9 + b * 3 + c)] ==
                      (a * 9 + b * 3 + c) % 3);
            }
    CHECK(rule_table_size(q3, 1) == 27);
    CHECK(rule_table_size(Alphabet{2}, 2) == 32);
    CHECK_THROWS_AS(rule_table_size(Alphabet{2}, 20, 1000), BudgetError);
}

TEST_CASE("named rules") {
    for (int q : {2, 3, 5}) {
        Alphabet a{q};
        for (Symbol l = 0; l < q; ++l)
            for (Symbol m = 0; m < q; ++m)
                for (Symbol r = 0; r < q; ++r) {
                    Word w{l, m, r};
                    CHECK(apply(identity_rule(a), w) == m);
                    CHECK(apply(left_shift_rule(a), w) == r);
                    CHECK(apply(right_shift_rule(a), w) == l);
                    CHECK(apply(constant_rule(a, 1), w) == 1);
                    if (q == 2) CHECK(apply(xor_rule(), w) == (l ^ r));
                }
    }
    // Table literals pinned: these spellings appear in spec files.
    CHECK(format_rule(identity_rule(Alphabet{2})) == "00110011");
    CHECK(format_rule(right_shift_rule(Alphabet{2})) == "00001111");
    CHECK(format_rule(left_shift_rule(Alphabet{2})) == "01010101");

    LocalRule id0 = identity_rule_of_radius_zero(Alphabet{3});
    CHECK(id0.radius == 0);
    for (Symbol s = 0; s < 3; ++s) CHECK(apply(id0, Word{s}) == s);
}

TEST_CASE("extend word") {
    Alphabet q3{3};
    LocalRule ls = left_shift_rule(q3);
    CHECK(extend_word(ls, Word{}) == Word{});
    CHECK(extend_word(ls, Word{1}) == Word{});
    CHECK(extend_word(ls, Word{1, 2}) == Word{});
    CHECK(extend_word(ls, Word{0, 1, 2, 0}) == Word{2, 0});

    std::mt19937_64 rng(21);
    for (int it = 0; it < 300; ++it) {
        LocalRule f = testutil::random_rule(rng, q3, 1);
        Word u = testutil::random_word(rng, q3, 3 + rng() % 6);
        Word v = extend_word(f, u);
        REQUIRE(v.size() == u.size() - 2);
        for (std::size_t i = 0; i < v.size(); ++i)
            CHECK(v[i] == apply(f, subword(u, i, 3)));
    }
}

TEST_CASE("self compose is iteration") {
    // Exhaustive over every q=2 r=1 rule: f^2 on a width-5 word equals f
    // applied twice; f^0 is the radius-0 identity, f^1 is f.
    Alphabet q2{2};
    for (std::uint64_t t = 0; t < 256; ++t) {
        LocalRule f = rule_from_table_index(q2, 1, t);
        CHECK(self_compose(f, 1) == f);
        LocalRule f0 = self_compose(f, 0);
        CHECK(f0.radius == 0);
        CHECK(apply(f0, Word{0}) == 0);
        CHECK(apply(f0, Word{1}) == 1);

        LocalRule f2 = self_compose(f, 2);
        REQUIRE(f2.radius == 2);
        for (std::uint64_t n = 0; n < 32; ++n) {
            Word w(5);
            for (int i = 0; i < 5; ++i) w.set(static_cast<std::size_t>(i), (n >> i) & 1);
            CHECK(apply(f2, w) == apply(f, extend_word(f, w)));
        }
    }

    std::mt19937_64 rng(22);
    Alphabet q3{3};
    for (int it = 0; it < 40; ++it) {
        LocalRule f = testutil::random_rule(rng, q3, 1);
        LocalRule f3 = self_compose(f, 3);
        REQUIRE(f3.radius == 3);
        for (int c = 0; c < 25; ++c) {
            Word w = testutil::random_word(rng, q3, 7);
            CHECK(apply(f3, w) == apply(f, extend_word(f, extend_word(f, w))));
        }
    }
}

TEST_CASE("pad radius ignores the extra cells") {
    Alphabet q2{2};
    for (std::uint64_t t = 0; t < 256; ++t) {
        LocalRule f = rule_from_table_index(q2, 1, t);
        CHECK(pad_radius(f, 1) == f);
        LocalRule g = pad_radius(f, 2);
        REQUIRE(g.radius == 2);
        for (std::uint64_t n = 0; n < 32; ++n) {
            Word w(5);
            for (int i = 0; i < 5; ++i) w.set(static_cast<std::size_t>(i), (n >> i) & 1);
            CHECK(apply(g, w) == apply(f, subword(w, 1, 3)));
        }
    }
    LocalRule id0 = identity_rule_of_radius_zero(Alphabet{3});
    LocalRule lifted = pad_radius(id0, 1);
    CHECK(lifted == identity_rule(Alphabet{3}));
}

TEST_CASE("rule literal round trips") {
    std::mt19937_64 rng(23);
    for (int it = 0; it < 200; ++it) {
        Alphabet a{2 + static_cast<int>(rng() % 3)};
        int r = static_cast<int>(rng() % 2) + (a.q > 2 ? 0 : 1);
        LocalRule f = testutil::random_rule(rng, a, r);
        CHECK(parse_rule(format_rule(f), a, r) == f);
    }
    Alphabet q40{40};
    LocalRule wide = testutil::random_rule(rng, q40, 0);
    CHECK(parse_rule(format_rule(wide), q40, 0) == wide);

    CHECK_THROWS_AS(parse_rule("0011", Alphabet{2}, 1), InputError);   // wrong length
    CHECK_THROWS_AS(parse_rule("00110012", Alphabet{2}, 1), InputError);
}

TEST_CASE("rule placement and tail phase") {
    // Tail phase is the absolute cell index mod the tail period, not the
    // distance from the window edge.
    Alphabet q8{8};
    auto c = [&](Symbol s) { return constant_rule(q8, s); };
    NuCaSpec spec;
    spec.alphabet = q8;
    spec.radius = 1;
    spec.k = 1;
    spec.window = {c(0), c(1), c(2)};
    spec.leftTail = {c(3), c(4)};
    spec.rightTail = {c(5), c(6), c(7)};
    check_spec(spec);

    CHECK(rule_at(spec, -1) == c(0));
    CHECK(rule_at(spec, 0) == c(1));
    CHECK(rule_at(spec, 1) == c(2));
    CHECK(rule_at(spec, 2) == c(7));  // 2 mod 3
    CHECK(rule_at(spec, 3) == c(5));
    CHECK(rule_at(spec, 4) == c(6));
    CHECK(rule_at(spec, 5) == c(7));
    CHECK(rule_at(spec, -2) == c(3));  // -2 mod 2 = 0
    CHECK(rule_at(spec, -3) == c(4));
    CHECK(rule_at(spec, -4) == c(3));

    NuCaSpec uni = make_uniform_spec(c(5));
    for (std::int64_t i = -6; i <= 6; ++i) CHECK(rule_at(uni, i) == c(5));

    NuCaSpec d = make_default_spec(c(0), {{-2, c(1)}, {3, c(2)}});
    CHECK(d.k == 3);
    CHECK(rule_at(d, -2) == c(1));
    CHECK(rule_at(d, 3) == c(2));
    for (std::int64_t i : {-5, -1, 0, 1, 2, 4, 9}) CHECK(rule_at(d, i) == c(0));
}

TEST_CASE("spec classes") {
    Alphabet q2{2};
    LocalRule f = identity_rule(q2);
    LocalRule g = left_shift_rule(q2);

    CHECK(class_of(make_uniform_spec(f)) == NuCaClass::UniformCA);
    CHECK(class_of(make_default_spec(f, {{0, g}})) == NuCaClass::DefaultPerturbed);

    NuCaSpec p = make_uniform_spec(f);
    p.leftTail = {f, g};
    p.rightTail = {f, g};
    CHECK(class_of(p) == NuCaClass::PeriodicallyPerturbed);

    NuCaSpec twoSided = make_uniform_spec(f);
    twoSided.leftTail = {g};
    CHECK(class_of(twoSided) == NuCaClass::PeriodicallyPerturbed);

    // Repeated tails are the same family as their primitive reduction.
    NuCaSpec doubled = make_uniform_spec(f);
    doubled.leftTail = {f, f};
    doubled.rightTail = {f, f};
    CHECK(class_of(doubled) == NuCaClass::UniformCA);
}

TEST_CASE("canonical spec") {
    Alphabet q2{2};
    LocalRule f = identity_rule(q2);
    LocalRule g = left_shift_rule(q2);

    NuCaSpec spec;
    spec.alphabet = q2;
    spec.radius = 1;
    spec.k = 2;
    spec.window = {f, f, g, f, f};  // outer cells match the tails
    spec.leftTail = {f, f};
    spec.rightTail = {f};
    NuCaSpec c = canonical_spec(spec);
    CHECK(c.k == 0);
    CHECK(c.window.size() == 1);
    CHECK(c.leftTail.size() == 1);
    CHECK(canonical_spec(c) == c);

    std::mt19937_64 rng(24);
    for (int it = 0; it < 200; ++it) {
        NuCaSpec s = testutil::random_periodic_spec(rng, Alphabet{2}, 1, 2, 3);
        NuCaSpec cs = canonical_spec(s);
        CHECK(canonical_spec(cs) == cs);
        for (std::int64_t i = -12; i <= 12; ++i) CHECK(rule_at(cs, i) == rule_at(s, i));
    }
}

TEST_CASE("n-compatibility") {
    Alphabet q2{2};
    LocalRule f = identity_rule(q2);
    LocalRule g = left_shift_rule(q2);

    NuCaSpec uni = make_uniform_spec(f);
    for (int n = 0; n <= 10; ++n) CHECK(is_n_compatible(uni, f, n));
    CHECK(is_n_compatible(uni, g, 0));
    CHECK(!is_n_compatible(uni, g, 1));

    NuCaSpec alt = make_uniform_spec(f);
    alt.leftTail = {f, g};
    alt.rightTail = {f, g};
    CHECK(is_n_compatible(alt, f, 1));
    CHECK(!is_n_compatible(alt, f, 2));

    NuCaSpec run2 = make_uniform_spec(f);
    run2.leftTail = {f, f, g};
    run2.rightTail = {f, f, g};
    CHECK(is_n_compatible(run2, f, 2));
    CHECK(!is_n_compatible(run2, f, 3));

    // Runs may wrap around the period boundary.
    NuCaSpec wrap = make_uniform_spec(f);
    wrap.leftTail = {f, g, f};
    wrap.rightTail = {f, g, f};
    CHECK(is_n_compatible(wrap, f, 2));
    CHECK(!is_n_compatible(wrap, f, 3));

    // Both tails must pass.
    NuCaSpec lop = make_uniform_spec(f);
    lop.rightTail = {f, g};
    CHECK(is_n_compatible(lop, f, 1));
    CHECK(!is_n_compatible(lop, f, 2));
}

TEST_CASE("spec validation") {
    Alphabet q2{2};
    LocalRule f = identity_rule(q2);
    NuCaSpec spec = make_uniform_spec(f);
    CHECK_NOTHROW(check_spec(spec));

    NuCaSpec bad = spec;
    bad.window.clear();
    CHECK_THROWS_AS(check_spec(bad), InputError);

    bad = spec;
    bad.leftTail.clear();
    CHECK_THROWS_AS(check_spec(bad), InputError);

    bad = spec;
    bad.rightTail = {identity_rule(Alphabet{3})};
    CHECK_THROWS_AS(check_spec(bad), InputError);

    bad = spec;
    bad.rightTail = {identity_rule_of_radius_zero(q2)};
    CHECK_THROWS_AS(check_spec(bad), InputError);

    bad = spec;
    bad.window[0].table = Word{0, 1};
    CHECK_THROWS_AS(check_spec(bad), InputError);
}
