#include "helpers.hpp"

#include "gc/errors.hpp"
#include "gc/parameters.hpp"
#include "gc/pebble.hpp"

#include <doctest.h>

using namespace gc;

TEST_SUITE("pebble-comonad") {

TEST_CASE("truncated cover sizes")
{
    const auto c = build_pebble_truncated(edgeless_graph(2), 1, 2);
    CHECK(c.structure().size() == 6);
    CHECK(c.sequences[0] == PebbleSequence{{1, 0}});
    CHECK(c.sequences[1] == PebbleSequence{{1, 1}});
    CHECK(build_pebble_truncated(edgeless_graph(2), 2, 2).structure().size() == 4 + 16);
    CHECK(c.forest.pebbled());
    CHECK(validate_forest_structure(c.forest).valid());
}

TEST_CASE("one pebble never lifts an edge between distinct plays")
{
    const auto c = build_pebble_truncated(complete_graph(2), 1, 2);
    CHECK(c.structure().table(0).empty());
}

TEST_CASE("two pebbles lift the edge when the first pebble is not reused")
{
    const auto c = build_pebble_truncated(complete_graph(2), 2, 2);
    const Element s = c.index.at(PebbleSequence{{1, 0}});
    const Element t = c.index.at(PebbleSequence{{1, 0}, {2, 1}});
    const Element u = c.index.at(PebbleSequence{{1, 0}, {1, 1}});
    CHECK(c.structure().holds(0, {s, t}));
    CHECK(c.structure().holds(0, {t, s}));
    CHECK_FALSE(c.structure().holds(0, {s, u}));
    CHECK(validate_forest_structure(c.forest).valid());
}

TEST_CASE("pebble indices for a forest order")
{
    // path a - b - c as a chain: a and c are not adjacent so they can share a pebble
    std::vector<std::optional<Element>> parent{std::nullopt, 0, 1};
    auto p = pebbling_for(path_graph(3), parent, 2);
    REQUIRE(p);
    CHECK(p->size() == 3);
    CHECK_FALSE(pebbling_for(complete_graph(3), parent, 2).has_value());
    CHECK(pebbling_for(complete_graph(3), parent, 3).has_value());
}

TEST_CASE("pebble coalgebra numbers")
{
    CHECK(pebble_coalgebra_number(edgeless_graph(1), 1).value == 1);
    CHECK(pebble_coalgebra_number(complete_graph(3), 3).value == 3);
    CHECK(pebble_coalgebra_number(path_graph(5), 5).value == 2);
    CHECK(pebble_coalgebra_number(cycle_graph(5), 5).value == 3);
    // star with three leaves
    CHECK(pebble_coalgebra_number(graph_from_edges(4, {{0, 1}, {0, 2}, {0, 3}}), 4).value == 2);
    const auto w = pebble_coalgebra_number(complete_graph(4), 4);
    REQUIRE(w.witness);
    CHECK(w.witness->pebble_bound == 4);
    CHECK(validate_forest_structure(*w.witness).valid());
}

TEST_CASE("pebble coalgebra number equals treewidth + 1 on small graphs")
{
    for (const auto& g : graphs_up_to_iso(5))
        if (!g.empty())
            CHECK(pebble_coalgebra_number(g, g.size()).value == treewidth(g) + 1);
}

}
