#include "helpers.hpp"

#include "gc/errors.hpp"
#include "gc/forest.hpp"
#include "gc/parameters.hpp"

#include <doctest.h>

using namespace gc;

namespace {

// Independent oracle: least height over all forest orders with the comparability condition.
std::size_t brute_tree_depth(const Structure& g)
{
    std::size_t best = g.size();
    for_each_forest_order(g, std::nullopt, [&](const std::vector<std::optional<Element>>& parent) {
        ForestStructure f(g);
        f.parent = parent;
        best = std::min(best, height_of(f));
        return true;
    });
    return best;
}

// Independent oracle: treewidth as the least max back-degree over elimination orders.
std::size_t brute_treewidth(const Graph& g)
{
    std::vector<Element> order(g.vertex_count);
    for (Element i = 0; i < order.size(); ++i)
        order[i] = i;
    std::size_t best = g.vertex_count;
    do {
        auto adj = g.adjacency;
        std::vector<bool> gone(g.vertex_count);
        std::size_t width = 0;
        for (auto v : order) {
            std::vector<Element> nb;
            for (Element u = 0; u < g.vertex_count; ++u)
                if (!gone[u] && u != v && adj[v][u])
                    nb.push_back(u);
            width = std::max(width, nb.size());
            for (auto a : nb)
                for (auto b : nb)
                    if (a != b)
                        adj[a][b] = true;
            gone[v] = true;
        }
        best = std::min(best, width);
    } while (std::next_permutation(order.begin(), order.end()));
    return best;
}

} // namespace

TEST_SUITE("parameters") {

TEST_CASE("tree-depth examples")
{
    CHECK(tree_depth(edgeless_graph(4)) == 1);
    for (std::size_t n = 1; n <= 6; ++n)
        CHECK(tree_depth(complete_graph(n)) == n);
    CHECK(tree_depth(path_graph(3)) == 2);
    CHECK(tree_depth(path_graph(4)) == 3);
    CHECK(tree_depth(path_graph(7)) == 3);
    CHECK(tree_depth(path_graph(8)) == 4);
    CHECK(tree_depth(cycle_graph(4)) == 3);
    CHECK_THROWS_AS(tree_depth(edgeless_graph(0)), PreconditionError);
    CHECK_THROWS_AS(tree_depth(edgeless_graph(25)), PreconditionError);
}

TEST_CASE("treewidth examples")
{
    CHECK(treewidth(edgeless_graph(3)) == 0);
    CHECK(treewidth(path_graph(5)) == 1);
    CHECK(treewidth(graph_from_edges(4, {{0, 1}, {0, 2}, {0, 3}})) == 1);
    CHECK(treewidth(cycle_graph(4)) == 2);
    CHECK(treewidth(complete_graph(4)) == 3);
    CHECK(treewidth(complete_graph(6)) == 5);
    CHECK_THROWS_AS(treewidth(edgeless_graph(0)), PreconditionError);
}

TEST_CASE("parameters of hypergraph tuples use the Gaifman graph")
{
    auto s = gc::test::parse("rel R 3\nelem a\nelem b\nelem c\ntuple R a b c");
    CHECK(tree_depth(s) == 3);
    CHECK(treewidth(s) == 2);
}

TEST_CASE("dynamic programs match brute force on graphs up to 5 vertices")
{
    for (const auto& g : graphs_up_to_iso(5)) {
        if (g.empty())
            continue;
        CHECK(tree_depth(g) == brute_tree_depth(g));
        CHECK(treewidth(g) == brute_treewidth(gaifman_graph(g)));
    }
}

}
