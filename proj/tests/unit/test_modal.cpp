#include "helpers.hpp"

#include "gc/errors.hpp"
#include "gc/modal.hpp"

#include <doctest.h>

using namespace gc;
using gc::test::kripke;

TEST_SUITE("modal-comonad") {

TEST_CASE("unravelling a self-loop")
{
    const auto u = unravel(kripke(1, {{0, 0}}), 2);
    CHECK(u.structure().size() == 2);
    CHECK(u.structure().table(1).size() == 1);
    CHECK(height_of(u.forest) == 2);
    CHECK(u.structure().point() == Element{0});
}

TEST_CASE("unravelling a fork")
{
    const auto u = unravel(kripke(3, {{0, 1}, {0, 2}}), 2);
    CHECK(u.structure().size() == 3);
    CHECK(roots_of(u.forest).size() == 1);
    CHECK(children_of(u.forest)[0].size() == 2);
    CHECK(u.walks[1].end() == 1);
    CHECK(u.walks[2].end() == 2);
}

TEST_CASE("unravellings of small Kripke structures")
{
    const auto all = pointed_structures_up_to_iso(Vocabulary{{"P", 1}, {"R", 2}}, 3);
    for (const auto& k : all)
        for (std::size_t d = 1; d <= 3; ++d) {
            const auto u = unravel(k, d);
            CHECK(validate_forest_structure(u.forest).valid());
            CHECK(height_of(u.forest) <= d);
            CHECK(check_modal_idempotence(k, d));
        }
}

TEST_CASE("a tree of depth within the bound unravels to itself")
{
    const auto tree = kripke(4, {{0, 1}, {0, 2}, {2, 3}}, {3});
    CHECK(is_isomorphic(unravel(tree, 3).structure(), tree));
    CHECK_FALSE(is_isomorphic(unravel(tree, 2).structure(), tree));
}

TEST_CASE("graded equivalence")
{
    const auto fork = kripke(3, {{0, 1}, {0, 2}});
    const auto one = kripke(2, {{0, 1}});
    CHECK(graded_equivalence(fork, fork, 3));
    CHECK_FALSE(graded_equivalence(fork, one, 2));
    CHECK(graded_equivalence(fork, one, 1));
    const auto loop = kripke(1, {{0, 0}});
    const auto two_cycle = kripke(2, {{0, 1}, {1, 0}});
    CHECK(graded_equivalence(loop, two_cycle, 3));
}

TEST_CASE("Kripke preconditions")
{
    CHECK(is_kripke(kripke(1, {})));
    CHECK_FALSE(is_kripke(complete_graph(2))); // no point
    auto ternary = Structure(Vocabulary{{"T", 3}});
    ternary.add_element("a");
    ternary.set_point(0);
    CHECK_FALSE(is_kripke(ternary));
    CHECK_THROWS_AS(unravel(ternary, 2), PreconditionError);
}

}
