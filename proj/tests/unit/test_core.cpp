#include "helpers.hpp"

#include "gc/errors.hpp"

#include <doctest.h>

using namespace gc;
using gc::test::directed;
using gc::test::parse;

TEST_SUITE("core-structures") {

TEST_CASE("parse a two-element structure")
{
    const auto s = parse("rel E 2\nelem a\nelem b\ntuple E a b");
    CHECK(s.size() == 2);
    CHECK(s.names() == std::vector<std::string>{"a", "b"});
    CHECK(s.table(0) == std::set<Tuple>{{0, 1}});
}

TEST_CASE("tuples over undeclared elements are rejected with a position")
{
    try {
        parse("rel E 2\ntuple E a b");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(std::string(e.what()).find("unknown element a") != std::string::npos);
    }
    CHECK_THROWS_AS(parse("rel E 2\nelem a\nelem a"), ParseError);
    CHECK_THROWS_AS(parse("rel E 2\nelem a\ntuple E a"), ParseError);
    CHECK_THROWS_AS(parse("frobnicate"), ParseError);
}

TEST_CASE("render is a canonical form and a fixpoint of parse")
{
    const std::string messy = "# comment\nrel E 2\nrel P 1\nelem b\nelem a\ntuple E a b\ntuple P b\n"
                              "tuple E b b\npoint a\n";
    const auto once = render_structure(parse(messy));
    CHECK(render_structure(parse(once)) == once);
    CHECK(parse(once) == parse(messy));
    for (const auto& s : structures_up_to_iso(edge_vocabulary(), 2))
        CHECK(parse(render_structure(s)) == s);
}

TEST_CASE("Gaifman graph")
{
    auto g = gaifman_graph(parse("rel E 2\nelem a\nelem b\ntuple E a b"));
    CHECK(g.edges == std::vector<Pair>{{0, 1}});
    CHECK(gaifman_graph(edgeless_graph(3)).edges.empty());
    g = gaifman_graph(parse("rel R 3\nelem a\nelem b\nelem c\ntuple R a b c"));
    CHECK(g.edges == std::vector<Pair>{{0, 1}, {0, 2}, {1, 2}});
    // loops do not create Gaifman edges
    CHECK(gaifman_graph(directed(1, {{0, 0}})).edges.empty());
}

TEST_CASE("check_map")
{
    const auto k3 = complete_graph(3), k2 = complete_graph(2);
    CHECK(check_map(ElementMap(std::vector<Element>{0, 1, 2}), k3, k3, MapMode::hom));
    CHECK(check_map(ElementMap(std::vector<Element>{0, 1, 2}), k3, k3, MapMode::iso));
    for (Element a = 0; a < 2; ++a)
        for (Element b = 0; b < 2; ++b)
            for (Element c = 0; c < 2; ++c)
                CHECK_FALSE(check_map(ElementMap(std::vector<Element>{a, b, c}), k3, k2, MapMode::hom));
    const auto edge = directed(2, {{0, 1}});
    CHECK_FALSE(check_map(ElementMap(std::vector<Element>{1, 0}), edge, edge, MapMode::hom));
}

TEST_CASE("homomorphism search and counting")
{
    const auto point = edgeless_graph(1);
    CHECK(search_homomorphisms(point, edgeless_graph(3)).size() == 3);
    CHECK(search_homomorphisms(complete_graph(3), complete_graph(2)).empty());
    const auto c4 = cycle_graph(4);
    auto homs = search_homomorphisms(c4, c4);
    CHECK(std::find(homs.begin(), homs.end(), ElementMap(std::vector<Element>{0, 1, 2, 3})) != homs.end());
    for (const auto& h : homs)
        CHECK(check_map(h, c4, c4, MapMode::hom));
    CHECK(search_homomorphisms(c4, c4, 2).size() == 2);

    CHECK(count_homomorphisms(point, complete_graph(3)) == 3);
    CHECK(count_homomorphisms(complete_graph(2), complete_graph(3)) == 6);
    CHECK(count_homomorphisms(complete_graph(3), complete_graph(2)) == 0);
    // chromatic polynomial of C4 at 3 colours
    CHECK(count_homomorphisms(c4, complete_graph(3)) == 18);
    CHECK(count_homomorphisms(Structure(edge_vocabulary()), complete_graph(3)) == 1);
}

TEST_CASE("partial maps")
{
    const auto a = edgeless_graph(2), b = edgeless_graph(2);
    const std::vector<Pair> one{{0, 1}};
    CHECK(check_partial_map(one, a, b, PartialMode::hom));
    CHECK(check_partial_map(one, a, b, PartialMode::iso));
    const std::vector<Pair> collapse{{0, 0}, {1, 0}};
    CHECK(check_partial_map(collapse, a, b, PartialMode::hom));
    CHECK_FALSE(check_partial_map(collapse, a, b, PartialMode::iso));
    const auto edge = directed(2, {{0, 1}});
    const std::vector<Pair> both{{0, 0}, {1, 1}};
    CHECK_FALSE(check_partial_map(both, edge, b, PartialMode::hom));
    CHECK_FALSE(check_partial_map(both, b, edge, PartialMode::iso));
    const std::vector<Pair> multi{{0, 0}, {0, 1}};
    CHECK_FALSE(check_partial_map(multi, a, b, PartialMode::hom));
}

TEST_CASE("isomorphism")
{
    const auto c4 = cycle_graph(4);
    CHECK(find_isomorphism(c4, c4) == ElementMap(std::vector<Element>{0, 1, 2, 3}));
    CHECK_FALSE(is_isomorphic(complete_graph(3), complete_graph(2)));
    CHECK_FALSE(is_isomorphic(complete_graph(2), edgeless_graph(2)));
    CHECK(is_isomorphic(path_graph(3), directed(3, {{1, 0}, {0, 1}, {0, 2}, {2, 0}})));
    CHECK(canonical_structure_code(path_graph(3)) == canonical_structure_code(directed(3, {{1, 0}, {0, 1}, {0, 2}, {2, 0}})));
    CHECK(canonical_structure_code(cycle_graph(4)) != canonical_structure_code(path_graph(4)));
    // points must correspond
    auto p = path_graph(3), q = path_graph(3);
    p.set_point(0);
    q.set_point(1);
    CHECK_FALSE(is_isomorphic(p, q));
}

TEST_CASE("isomorphism class counts match the known enumerations")
{
    // simple graphs on 0..6 vertices: 1, 1, 2, 4, 11, 34, 156
    CHECK(graphs_up_to_iso(6).size() == 209);
    CHECK(graphs_up_to_iso(4).size() == 19);
    // digraphs with loops on 0..3 vertices: 1, 2, 10, 104
    CHECK(structures_up_to_iso(edge_vocabulary(), 3).size() == 117);
    for (const auto& g : graphs_up_to_iso(4))
        CHECK(is_simple_graph(g));
}

TEST_CASE("with_equality adds the identity relation")
{
    const auto e = with_equality(complete_graph(2));
    REQUIRE(e.vocabulary().size() == 2);
    CHECK(e.vocabulary()[1].name == "I");
    CHECK(e.table(1) == std::set<Tuple>{{0, 0}, {1, 1}});
    CHECK(e.table(0) == complete_graph(2).table(0));
}

}
