#include "helpers.hpp"

#include "gc/ef.hpp"
#include "gc/errors.hpp"
#include "gc/parameters.hpp"

#include <doctest.h>

using namespace gc;
using gc::test::parse;

TEST_SUITE("ef-comonad") {

TEST_CASE("cover universe sizes")
{
    CHECK(build_ef(edgeless_graph(2), 2).structure().size() == 6);
    CHECK(build_ef(edgeless_graph(3), 2).structure().size() == 12);
    CHECK(build_ef(edgeless_graph(2), 3).structure().size() == 14);
    CHECK_THROWS_AS(build_ef(edgeless_graph(2), 0), PreconditionError);
}

TEST_CASE("lifted relation of a single directed edge")
{
    const auto a = parse("rel E 2\nelem a\nelem b\ntuple E a b");
    const auto cover = build_ef(a, 2);
    const Element sa = cover.element_of({0}), sab = cover.element_of({0, 1});
    const Element sb = cover.element_of({1}), sba = cover.element_of({1, 0});
    CHECK(cover.structure().table(0) == std::set<Tuple>{{sa, sab}, {sba, sb}});
}

TEST_CASE("at k = 1 only constant tuples survive")
{
    for (const auto& s : structures_up_to_iso(edge_vocabulary(), 3)) {
        const auto cover = build_ef(s, 1);
        CHECK(cover.structure().size() == s.size());
        for (const auto& t : cover.structure().table(0))
            CHECK(t[0] == t[1]);
        CHECK(cover.structure().table(0).size() ==
              static_cast<std::size_t>(std::count_if(s.table(0).begin(), s.table(0).end(),
                                                     [](const Tuple& t) { return t[0] == t[1]; })));
    }
}

TEST_CASE("counit and comultiplication")
{
    CHECK(counit_of(Sequence{0, 1, 0}) == 0);
    CHECK(counit_of(Sequence{0}) == 0);
    CHECK(comultiplication_of({0}) == std::vector<Sequence>{{0}});
    CHECK(comultiplication_of({0, 1}) == std::vector<Sequence>{{0}, {0, 1}});
    for (const auto& s : structures_up_to_iso(edge_vocabulary(), 3))
        for (std::size_t k = 1; k <= 3; ++k) {
            const auto cover = build_ef(s, k);
            CHECK(check_map(counit_map(cover), cover.structure(), s, MapMode::hom));
            for (const auto& seq : cover.sequences) {
                // left counit law: the last prefix is the sequence itself
                CHECK(comultiplication_of(seq).back() == seq);
                // right counit law: mapping the counit over the prefixes recovers the sequence
                Sequence back;
                for (const auto& p : comultiplication_of(seq))
                    back.push_back(counit_of(p));
                CHECK(back == seq);
            }
        }
}

TEST_CASE("coKleisli extension")
{
    // T: a single node mapped to a
    const auto k2 = complete_graph(2);
    const auto cover = build_ef(k2, 2);
    ForestStructure single(edgeless_graph(1));
    auto ext = cokleisli_extend(ElementMap(std::vector<Element>{0}), single, k2, cover);
    CHECK(cover.sequences[ext.at(0)] == Sequence{0});

    // T: chain x < y with an edge, embedded into K2
    auto t = complete_graph(2);
    ForestStructure chain(t);
    chain.parent[1] = 0;
    ext = cokleisli_extend(ElementMap(std::vector<Element>{0, 1}), chain, k2, cover);
    CHECK(cover.sequences[ext.at(0)] == Sequence{0});
    CHECK(cover.sequences[ext.at(1)] == Sequence{0, 1});
    CHECK(check_forest_morphism(ext, chain, cover.forest));

    // extending the counit of the cover gives the identity
    const auto id = cokleisli_extend(counit_map(cover), cover.forest, k2, cover);
    for (Element x = 0; x < cover.structure().size(); ++x)
        CHECK(id.at(x) == x);

    CHECK_THROWS_AS(cokleisli_extend(ElementMap(std::vector<Element>{0, 0}), chain, k2, cover), PreconditionError);
}

TEST_CASE("coalgebras")
{
    Coalgebra c{1, {{0}, {1}}};
    CHECK(check_coalgebra(c, edgeless_graph(2)));
    CHECK_FALSE(check_coalgebra(c, complete_graph(2)));
    // every candidate into the k = 1 cover of K2 fails
    for (Element a = 0; a < 2; ++a)
        for (Element b = 0; b < 2; ++b)
            CHECK_FALSE(check_coalgebra(Coalgebra{1, {{a}, {b}}}, complete_graph(2)));
    CHECK(check_coalgebra(Coalgebra{2, {{0}, {0, 1}}}, complete_graph(2)));
    CHECK_FALSE(check_coalgebra(Coalgebra{2, {{0}, {1, 1}}}, complete_graph(2)));
}

TEST_CASE("coalgebras correspond to forest orders")
{
    for (const auto& g : graphs_up_to_iso(4)) {
        if (g.empty())
            continue;
        for_each_forest_order(g, std::nullopt, [&](const std::vector<std::optional<Element>>& parent) {
            ForestStructure f(g);
            f.parent = parent;
            const auto h = height_of(f);
            const auto c = coalgebra_from_forest(f, h);
            CHECK(check_coalgebra(c, g));
            CHECK(forest_from_coalgebra(c) == parent);
            return true;
        });
    }
}

TEST_CASE("coalgebra numbers")
{
    CHECK(ef_coalgebra_number(edgeless_graph(3), 3).value == 1);
    CHECK(ef_coalgebra_number(complete_graph(3), 3).value == 3);
    CHECK(ef_coalgebra_number(path_graph(3), 3).value == 2);
    CHECK(ef_coalgebra_number(path_graph(4), 4).value == 3);
    const auto bounded = ef_coalgebra_number(complete_graph(3), 2);
    CHECK_FALSE(bounded.value.has_value());
    CHECK_FALSE(bounded.witness.has_value());
    const auto w = ef_coalgebra_number(cycle_graph(4), 4);
    REQUIRE(w.witness);
    CHECK(validate_forest_structure(*w.witness).valid());
    CHECK(height_of(*w.witness) == *w.value);
}

TEST_CASE("coalgebra number equals tree-depth on small graphs")
{
    for (const auto& g : graphs_up_to_iso(5))
        if (!g.empty())
            CHECK(ef_coalgebra_number(g, g.size()).value == tree_depth(g));
}

TEST_CASE("the EF comonad is not idempotent")
{
    const auto a = edgeless_graph(2);
    const auto once = build_ef(a, 2);
    const auto twice = build_ef(once.structure(), 2);
    CHECK(once.structure().size() == 6);
    CHECK(twice.structure().size() == 42);
}

}
