#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "cla/distinguish.hpp"
#include "cla/parser.hpp"
#include "cla/selftest.hpp"
#include "fixtures.hpp"

using namespace cla;

namespace {

InteractionSet ts(std::vector<Interaction> ms) { return InteractionSet(std::move(ms)); }

}  // namespace

TEST_CASE("independence") {
    CHECK_FALSE(independent(ts({Interaction({{0, 1}}), Interaction({{0, 1}, {1, 0}})})));
    CHECK(independent(ts({Interaction({{0, 1}, {1, 0}})})));
    CHECK(independent(InteractionSet{}));
    CHECK(independent(ts({Interaction({{0, 1}}), Interaction({{1, 0}})})));
    // The 0-way interaction is a strict subset of everything.
    CHECK_FALSE(independent(ts({Interaction{}, Interaction({{0, 1}})})));
}

TEST_CASE("known indistinguishable pairs on the phone model") {
    SutModel m = fixtures::phone();
    InteractionSet a = ts({Interaction({{0, 0}, {2, 0}})});
    InteractionSet b = ts({Interaction({{1, 2}, {2, 0}})});
    CHECK_FALSE(distinguishable(m, a, b));

    SutModel u = fixtures::phone_unconstrained();
    InteractionSet c = ts({Interaction({{3, 0}}), Interaction({{3, 1}})});
    InteractionSet d = ts({Interaction({{4, 0}}), Interaction({{4, 1}})});
    CHECK_FALSE(distinguishable(u, c, d));

    CHECK_FALSE(distinguishable(m, a, a));
}

TEST_CASE("distinct one-way singletons are distinguishable on the phone model") {
    SutModel m = fixtures::phone();
    std::vector<Interaction> vi1 = valid_interactions(m, 1, StrengthMode::Exact);
    REQUIRE(vi1.size() == 13);
    for (std::size_t i = 0; i < vi1.size(); ++i)
        for (std::size_t j = i + 1; j < vi1.size(); ++j)
            CHECK(distinguishable(m, ts({vi1[i]}), ts({vi1[j]})));
}

TEST_CASE("distinguishability is symmetric") {
    std::mt19937_64 rng(21);
    SutModel m = fixtures::phone();
    std::vector<InteractionSet> universe = build_universe(m, UniverseParams{1, 2, true, true});
    for (int i = 0; i < 100; ++i) {
        const InteractionSet& a = universe[rng() % universe.size()];
        const InteractionSet& b = universe[rng() % universe.size()];
        CHECK(distinguishable(m, a, b) == distinguishable(m, b, a));
    }
}

TEST_CASE("lemma-style probes agree with the exhaustive-array oracle") {
    std::mt19937_64 rng(22);
    SutModel m = fixtures::phone();
    TestArray exhaustive;
    exhaustive.rows = enumerate_valid_tests(m);
    std::vector<InteractionSet> universe = build_universe(m, UniverseParams{1, 2, true, true});
    for (int i = 0; i < 200; ++i) {
        const InteractionSet& a = universe[rng() % universe.size()];
        const InteractionSet& b = universe[rng() % universe.size()];
        bool by_probe = distinguishable(m, a, b);
        bool by_rho = covering_rows(exhaustive, a) != covering_rows(exhaustive, b);
        CHECK(by_probe == by_rho);
    }
}

TEST_CASE("universe construction per variant") {
    SutModel m = fixtures::phone();
    // Exact d=1, exact t=1: one singleton per one-way interaction.
    CHECK(build_universe(m, UniverseParams{1, 1, false, false}).size() == 13);
    // bar_d adds the empty set.
    CHECK(build_universe(m, UniverseParams{1, 1, true, false}).size() == 14);
    // bar_t singletons draw from VI_0..VI_2 (71 members including the 0-way).
    CHECK(build_universe(m, UniverseParams{1, 2, false, true}).size() == 71);
    CHECK_THROWS_AS(build_universe(m, UniverseParams{2, 2, true, true}, 10), CapExceeded);
}

TEST_CASE("the three indistinguishable singleton pairs at d=1, up to strength 2") {
    SutModel m = fixtures::phone();
    auto pairs = indistinguishable_pairs(m, UniverseParams{1, 2, false, true});
    REQUIRE(pairs.size() == 3);
    std::vector<std::pair<InteractionSet, InteractionSet>> expected = {
        {ts({Interaction({{0, 0}, {2, 0}})}), ts({Interaction({{1, 2}, {2, 0}})})},
        {ts({Interaction({{0, 2}, {3, 1}})}), ts({Interaction({{0, 2}, {4, 1}})})},
        {ts({Interaction({{2, 2}, {3, 1}})}), ts({Interaction({{2, 2}, {4, 1}})})}};
    std::sort(expected.begin(), expected.end());
    CHECK(pairs == expected);
}

TEST_CASE("the fifteen indistinguishable pairs at sizes up to 2, strength 1") {
    SutModel m = fixtures::phone();
    auto pairs = indistinguishable_pairs(m, UniverseParams{2, 1, true, false});
    CHECK(pairs.size() == 15);

    auto has = [&](InteractionSet a, InteractionSet b) {
        if (b < a) std::swap(a, b);
        return std::find(pairs.begin(), pairs.end(), std::make_pair(a, b)) != pairs.end();
    };
    Interaction f1_0({{0, 0}}), f3_0({{2, 0}}), f2_2({{1, 2}});
    Interaction f4_0({{3, 0}}), f4_1({{3, 1}}), f5_0({{4, 0}}), f5_1({{4, 1}});
    Interaction f1_2({{0, 2}}), f3_2({{2, 2}});
    CHECK(has(ts({f1_0}), ts({f1_0, f3_0})));
    CHECK(has(ts({f2_2}), ts({f2_2, f3_0})));
    CHECK(has(ts({f4_0}), ts({f4_0, f5_0})));
    CHECK(has(ts({f4_1}), ts({f1_2, f4_1})));
    CHECK(has(ts({f4_1}), ts({f3_2, f4_1})));
    CHECK(has(ts({f5_1}), ts({f1_2, f5_1})));
    CHECK(has(ts({f5_1}), ts({f3_2, f5_1})));
    CHECK(has(ts({f5_1}), ts({f4_1, f5_1})));
    CHECK(has(ts({f1_2, f4_1}), ts({f3_2, f4_1})));
    CHECK(has(ts({f1_2, f5_1}), ts({f3_2, f5_1})));
    CHECK(has(ts({f1_2, f5_1}), ts({f4_1, f5_1})));
    CHECK(has(ts({f3_2, f5_1}), ts({f4_1, f5_1})));
    CHECK(has(ts({f4_0, f4_1}), ts({f4_0, f5_1})));
    CHECK(has(ts({f4_0, f4_1}), ts({f5_0, f5_1})));
    CHECK(has(ts({f4_0, f5_1}), ts({f5_0, f5_1})));
}

TEST_CASE("spot pairs with nested members at d=2, up to strength 2") {
    SutModel m = fixtures::phone();
    Interaction f1_0({{0, 0}}), f3_0({{2, 0}});
    Interaction t14({{0, 2}, {3, 1}}), t15({{0, 2}, {4, 1}});
    Interaction t12a({{0, 0}, {1, 0}}), t12b({{0, 1}, {1, 0}});
    CHECK_FALSE(distinguishable(m, ts({f1_0}), ts({f1_0, f3_0})));
    CHECK_FALSE(distinguishable(m, ts({t14}), ts({t14, t15})));
    // A test with F1=0, F2=0 covers the first set but neither member of the
    // second, so this pair is distinguishable.
    CHECK(distinguishable(m, ts({t12a, t12b}), ts({t14, t15})));
}

TEST_CASE("tiny unconstrained model has no indistinguishable singleton pairs") {
    SutModel m = parse_model("factor A { 0, 1 }\nfactor B { 0, 1 }\n");
    CHECK(indistinguishable_pairs(m, UniverseParams{1, 1, false, false}).empty());
}
