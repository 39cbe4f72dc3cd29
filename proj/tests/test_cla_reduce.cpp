#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "cla/cca_gen.hpp"
#include "cla/cla_reduce.hpp"
#include "cla/distinguish.hpp"
#include "cla/parser.hpp"
#include "cla/verify.hpp"
#include "fixtures.hpp"

using namespace cla;

namespace {

// Abstract 5-row, 3-interaction setting from the worked deletion example:
// rho(T1) = {0,1,2}, rho(T2) = {0,1,3}, rho(T3) = {3,4} (0-based rows).
struct Toy {
    TestArray array;
    std::vector<Interaction> vi;
    CoverageMap map;
    std::vector<std::vector<int>> row_interactions;

    Toy() : array(make_array()), vi(make_vi()), map(array, vi), row_interactions(5) {
        for (int r = 0; r < 5; ++r)
            for (int i = 0; i < 3; ++i)
                if (vi[i].covered_by(array.rows[r])) row_interactions[r].push_back(map.index_of(vi[i]));
    }

    static TestArray make_array() {
        TestArray a;
        a.rows = {{0, 0, 1}, {0, 0, 1}, {0, 1, 1}, {1, 0, 0}, {1, 1, 0}};
        return a;
    }

    static std::vector<Interaction> make_vi() {
        return {Interaction({{0, 0}}), Interaction({{1, 0}}), Interaction({{2, 0}})};
    }
};

}  // namespace

TEST_CASE("coverage map on the golden 2-CCA") {
    SutModel m = fixtures::phone();
    TestArray fig3 = fixtures::array("fig3.array", m);
    std::vector<Interaction> vi = valid_interactions(m, 2, StrengthMode::Exact);
    CoverageMap map = build_coverage_map(fig3, vi);
    CHECK(map.size() == 57);
    CHECK(map.rows(Interaction({{0, 0}, {1, 0}})).indices() == std::vector<int>{0, 1});
    // The 0-way interaction is not part of a strength-t map.
    CHECK(map.index_of(Interaction{}) == -1);
}

TEST_CASE("coverage map of an empty array is empty") {
    CoverageMap map = build_coverage_map(TestArray{}, {});
    CHECK(map.size() == 0);
}

TEST_CASE("incremental row deletion matches a rebuild") {
    Toy toy;
    for (int ia : toy.row_interactions[3]) toy.map.erase_row(ia, 3);
    TestArray remaining;
    remaining.rows = toy.array.rows;
    for (int i = 0; i < 3; ++i) {
        RowSet expected = covering_rows(toy.array, toy.vi[i]);
        expected.erase(3);
        CHECK(toy.map.rows(i) == expected);
    }
}

TEST_CASE("deletion trace, ascending order") {
    Toy toy;
    std::vector<int> deleted = detail::reduce_rows(toy.map, toy.row_interactions, {0, 1, 2, 3, 4});
    CHECK(deleted == std::vector<int>{0, 1});
}

TEST_CASE("deletion trace, descending order") {
    Toy toy;
    std::vector<int> deleted = detail::reduce_rows(toy.map, toy.row_interactions, {4, 3, 2, 1, 0});
    CHECK(deleted == std::vector<int>{4, 2, 1});
}

TEST_CASE("reducing the exhaustive phone array at t=1") {
    SutModel m = fixtures::phone();
    TestArray exhaustive;
    exhaustive.rows = enumerate_valid_tests(m);
    auto [reduced, report] = reduce_to_cla(m, exhaustive, 1, 4);
    CHECK(report.input_rows == 31);
    CHECK(report.output_rows == reduced.row_count());
    CHECK(reduced.row_count() <= 31);
    CHECK(verify_cla(m, reduced, UniverseParams{1, 1, true, true}).pass);
    auto [min_size, witness] = minimal_cla_size(m, UniverseParams{1, 1, true, true});
    CHECK(reduced.row_count() >= min_size);
}

TEST_CASE("output rows are a subset of input rows") {
    SutModel m = fixtures::phone();
    TestArray cca = generate_cca(m, 3, 9);
    auto [reduced, report] = reduce_to_cla(m, cca, 2, 9);
    std::set<Test> input(cca.rows.begin(), cca.rows.end());
    for (const auto& row : reduced.rows) CHECK(input.count(row) == 1);
    CHECK(reduced.row_count() + static_cast<int>(report.deleted_rows.size()) ==
          static_cast<int>(report.kept.size()));
}

TEST_CASE("reduction is deterministic and idempotent-ish") {
    SutModel m = fixtures::phone();
    TestArray cca = generate_cca(m, 3, 11);
    auto [first, r1] = reduce_to_cla(m, cca, 2, 11);
    auto [again, r2] = reduce_to_cla(m, cca, 2, 11);
    CHECK(first.rows == again.rows);

    auto [second, r3] = reduce_to_cla(m, first, 2, 99);
    CHECK(second.row_count() <= first.row_count());
    CHECK(verify_cla(m, second, UniverseParams{1, 2, true, true}).pass);
}

TEST_CASE("coverage equality matches distinguishability on a fresh (t+1)-CCA") {
    SutModel m = fixtures::phone();
    TestArray cca = generate_cca(m, 3, 17);
    std::vector<Interaction> vi = valid_interactions(m, 2, StrengthMode::Exact);
    CoverageMap map = build_coverage_map(cca, vi);
    for (std::size_t a = 0; a < vi.size(); ++a) {
        for (std::size_t b = a + 1; b < vi.size(); ++b) {
            bool same_rows = map.rows(static_cast<int>(a)) == map.rows(static_cast<int>(b));
            bool dist = distinguishable(m, InteractionSet({vi[a]}), InteractionSet({vi[b]}));
            CHECK(same_rows == !dist);
        }
    }
}

TEST_CASE("non-CCA input is rejected by the precondition probes") {
    SutModel m = fixtures::phone();
    TestArray fig4 = fixtures::array("fig4.array", m);
    CHECK_THROWS_MATCHES(
        reduce_to_cla(m, fig4, 2, 0), InputError,
        Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring("not a CCA")));
}

TEST_CASE("invalid rows are rejected") {
    SutModel m = fixtures::phone();
    TestArray fig2 = fixtures::array("fig2.array", m);  // row 0 violates constraints
    CHECK_THROWS_AS(reduce_to_cla(m, fig2, 2, 0), InputError);
}
