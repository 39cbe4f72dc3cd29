#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "cla/enumeration.hpp"
#include "cla/model.hpp"
#include "cla/parser.hpp"
#include "cla/selftest.hpp"
#include "fixtures.hpp"

using namespace cla;

TEST_CASE("evaluate on the phone model") {
    SutModel m = fixtures::phone();
    CHECK(evaluate(m, {1, 0, 1, 1, 1}));
    CHECK_FALSE(evaluate(m, {1, 0, 0, 0, 1}));
}

TEST_CASE("evaluate with no constraints is always true") {
    SutModel m = fixtures::phone_unconstrained();
    CHECK(evaluate(m, {2, 0, 0, 0, 0}));
    CHECK(evaluate(m, {0, 1, 0, 1, 0}));
}

TEST_CASE("evaluate rejects malformed tests") {
    SutModel m = fixtures::phone();
    CHECK_THROWS_AS(evaluate(m, {1, 0, 1, 1}), InputError);
    CHECK_THROWS_AS(evaluate(m, {1, 0, 1, 1, 5}), InputError);
}

TEST_CASE("find_valid_test covers an interaction") {
    SutModel m = fixtures::phone();
    auto found = find_valid_test(m, Interaction({{0, 1}, {1, 0}}), {});
    REQUIRE(found.has_value());
    CHECK(Interaction({{0, 1}, {1, 0}}).covered_by(*found));
    CHECK(evaluate(m, *found));
}

TEST_CASE("find_valid_test reports invalid interactions") {
    SutModel m = fixtures::phone();
    CHECK_FALSE(find_valid_test(m, Interaction({{1, 0}, {2, 0}}), {}).has_value());
}

TEST_CASE("find_valid_test avoid sets on a known indistinguishable pair") {
    SutModel m = fixtures::phone();
    Interaction a({{0, 0}, {2, 0}});
    Interaction b({{1, 2}, {2, 0}});
    CHECK_FALSE(find_valid_test(m, a, {b}).has_value());
    CHECK_FALSE(find_valid_test(m, b, {a}).has_value());
}

TEST_CASE("find_valid_test with the 0-way interaction probes satisfiability") {
    SutModel m = fixtures::phone();
    CHECK(find_valid_test(m, Interaction{}, {}).has_value());

    SutModel unsat = parse_model("factor A { 0, 1 }\nconstraint A = 0 && A != 0\n");
    CHECK_FALSE(find_valid_test(unsat, Interaction{}, {}).has_value());
}

TEST_CASE("avoid interactions only bite when fully covered") {
    SutModel m = fixtures::phone_unconstrained();
    // Avoiding {F1=0, F2=0} still permits tests with only one of the two values.
    auto found = find_valid_test(m, Interaction({{0, 0}}), {Interaction({{0, 0}, {1, 0}})});
    REQUIRE(found.has_value());
    CHECK((*found)[0] == 0);
    CHECK((*found)[1] != 0);
}

TEST_CASE("interaction canonicalization") {
    Interaction a({{2, 0}, {0, 1}});
    Interaction b({{0, 1}, {2, 0}});
    CHECK(a == b);
    CHECK(a.pairs.front().first == 0);
    CHECK_THROWS_AS(Interaction({{1, 0}, {1, 1}}), InputError);
}

TEST_CASE("interaction subset relations") {
    Interaction small({{1, 0}});
    Interaction big({{1, 0}, {3, 1}});
    CHECK(small.subset_of(big));
    CHECK(small.strict_subset_of(big));
    CHECK_FALSE(big.subset_of(small));
    CHECK(big.subset_of(big));
    CHECK_FALSE(big.strict_subset_of(big));
    CHECK(Interaction{}.subset_of(small));
}

TEST_CASE("interaction set deduplicates and orders members") {
    InteractionSet ts({Interaction({{1, 0}}), Interaction({{0, 0}}), Interaction({{1, 0}})});
    REQUIRE(ts.members.size() == 2);
    CHECK(ts.members[0] == Interaction({{0, 0}}));
}

TEST_CASE("three-valued partial evaluation") {
    SutModel m = fixtures::phone();
    std::vector<int> partial(5, -1);
    CHECK(m.constraint.eval_partial(partial) == Tri::Unknown);
    partial[4] = 0;  // F5 = 0 => F4 = 0
    partial[3] = 1;
    CHECK(m.constraint.eval_partial(partial) == Tri::False);
    partial[3] = 0;
    CHECK(m.constraint.eval_partial(partial) == Tri::Unknown);
}

TEST_CASE("validity agrees with exhaustive enumeration on random models") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 20; ++i) {
        SutModel m = random_model(rng);
        std::vector<Test> all = enumerate_valid_tests(m);
        for (const auto& ia : all_interactions(m, std::min(2, m.factor_count()))) {
            bool by_probe = find_valid_test(m, ia, {}).has_value();
            bool by_enum = std::any_of(all.begin(), all.end(),
                                       [&](const Test& t) { return ia.covered_by(t); });
            REQUIRE(by_probe == by_enum);
        }
    }
}

TEST_CASE("evaluate agrees with enumeration on the phone model") {
    SutModel m = fixtures::phone();
    std::vector<Test> all = enumerate_valid_tests(m);
    int count = 0;
    Test t(5, 0);
    for (t[0] = 0; t[0] < 3; ++t[0])
        for (t[1] = 0; t[1] < 3; ++t[1])
            for (t[2] = 0; t[2] < 3; ++t[2])
                for (t[3] = 0; t[3] < 2; ++t[3])
                    for (t[4] = 0; t[4] < 2; ++t[4])
                        if (evaluate(m, t)) {
                            REQUIRE(std::find(all.begin(), all.end(), t) != all.end());
                            ++count;
                        }
    CHECK(count == static_cast<int>(all.size()));
}
