#include "helpers.hpp"

#include "gc/errors.hpp"
#include "gc/homcount.hpp"
#include "gc/logic.hpp"

#include <doctest.h>

using namespace gc;

TEST_SUITE("homcount") {

TEST_CASE("Lovasz tests")
{
    const auto c4 = cycle_graph(4);
    CHECK_FALSE(lovasz_test(c4, c4, 4).distinguished);
    auto r = lovasz_test(complete_graph(2), edgeless_graph(2), 2);
    REQUIRE(r.distinguished);
    CHECK(is_isomorphic(*r.witness, complete_graph(2)));
    CHECK(r.count_a == 2);
    CHECK(r.count_b == 0);
    r = lovasz_test(disjoint_union(cycle_graph(3), cycle_graph(3)), cycle_graph(6), 3);
    REQUIRE(r.distinguished);
    CHECK(is_isomorphic(*r.witness, complete_graph(3)));
    CHECK(r.count_a == 12);
    CHECK(r.count_b == 0);
    CHECK_FALSE(lovasz_test(disjoint_union(cycle_graph(3), cycle_graph(3)), cycle_graph(6), 2).distinguished);
    CHECK_THROWS_AS(lovasz_test(c4, linear_order(4), 2), PreconditionError);
    CHECK_THROWS_AS(test_family(Vocabulary{{"P", 1}}, 2, TestFamily::graphs), PreconditionError);
}

TEST_CASE("Lovasz verdicts on graphs up to 4 vertices decide isomorphism")
{
    const auto g = graphs_up_to_iso(4);
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j)
            CHECK(lovasz_test(g[i], g[j], 4).distinguished == (i != j));
}

TEST_CASE("parallel and serial hom counts agree")
{
    const auto tests = structures_up_to_iso(edge_vocabulary(), 3);
    const auto targets = structures_up_to_iso(edge_vocabulary(), 3);
    for (std::size_t i = 0; i < tests.size(); i += 7)
        for (std::size_t j = 0; j < targets.size(); j += 3)
            CHECK(count_homomorphisms(tests[i], targets[j]) == count_homomorphisms_serial(tests[i], targets[j]));
    CHECK(count_homomorphisms(cycle_graph(6), complete_graph(4)) == count_homomorphisms_serial(cycle_graph(6), complete_graph(4)));
    const auto a = disjoint_union(cycle_graph(3), cycle_graph(3));
    CHECK(lovasz_test(a, cycle_graph(6), 3, TestFamily::automatic, true).tested ==
          lovasz_test(a, cycle_graph(6), 3, TestFamily::automatic, false).tested);
}

TEST_CASE("bounded tree-depth profiles")
{
    // k = 1: tests are edgeless, counts are |A|^n times loop factors
    const auto p = bounded_td_profile(cycle_graph(4), 1, 2);
    for (const auto& e : p.entries) {
        CHECK(gaifman_graph(e.test).edges.empty());
        const bool loops = !e.test.table(0).empty();
        CHECK(e.count == (loops ? 0u : (e.test.size() == 1 ? 4u : 16u)));
    }
    CHECK(bounded_td_profile(cycle_graph(4), 2, 3) == bounded_td_profile(graph_from_edges(4, {{1, 2}, {2, 3}, {3, 0}, {0, 1}}), 2, 3));
    CHECK_THROWS_AS(bounded_td_profile(cycle_graph(4), 0, 3), PreconditionError);
}

TEST_CASE("counting equivalence implies equal bounded tree-depth profiles")
{
    const auto s = structures_up_to_iso(edge_vocabulary(), 3);
    for (std::size_t k = 1; k <= 2; ++k) {
        std::vector<HomProfile> prof;
        for (const auto& a : s)
            prof.push_back(bounded_td_profile(a, k, 3));
        for (std::size_t i = 0; i < s.size(); ++i)
            for (std::size_t j = i + 1; j < s.size(); ++j)
                if (rank_k_equiv(s[i], s[j], k, Fragment::count))
                    CHECK(prof[i] == prof[j]);
    }
}

}
