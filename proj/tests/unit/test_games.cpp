#include "helpers.hpp"

#include "gc/ef.hpp"
#include "gc/errors.hpp"
#include "gc/games.hpp"

#include <doctest.h>

using namespace gc;
using gc::test::kripke;

namespace {

const std::vector<Structure>& small()
{
    static const auto s = structures_up_to_iso(edge_vocabulary(), 2);
    return s;
}

} // namespace

TEST_SUITE("games") {

TEST_CASE("identical structures: Duplicator wins every game")
{
    const auto c4 = cycle_graph(4);
    for (auto m : {GameMode::ep, GameMode::full, GameMode::count}) {
        CHECK(solve_ef_game(c4, c4, 3, m).duplicator_wins());
        CHECK(solve_pebble_game(c4, c4, 2, m).duplicator_wins());
    }
    const auto k = kripke(2, {{0, 1}, {1, 1}}, {1});
    for (auto m : {GameMode::ep, GameMode::full, GameMode::count})
        CHECK(solve_modal_game(k, k, 3, m).duplicator_wins());
}

TEST_CASE("linear orders")
{
    const auto l2 = linear_order(2), l3 = linear_order(3), l4 = linear_order(4);
    CHECK(solve_ef_game(l3, l2, 1, GameMode::ep).duplicator_wins());
    CHECK_FALSE(solve_ef_game(l3, l2, 2, GameMode::ep).duplicator_wins());
    CHECK(solve_ef_game(l3, l4, 2, GameMode::full).duplicator_wins());
    CHECK_FALSE(solve_ef_game(l3, l4, 3, GameMode::full).duplicator_wins());
    CHECK_FALSE(solve_ef_game(l3, l4, 1, GameMode::count).duplicator_wins());
}

TEST_CASE("pebble landmarks")
{
    const auto k3 = complete_graph(3), k2 = complete_graph(2);
    CHECK(solve_pebble_game(k3, k2, 2, GameMode::ep).duplicator_wins());
    CHECK_FALSE(solve_pebble_game(k3, k2, 3, GameMode::ep).duplicator_wins());
    const auto tt = disjoint_union(cycle_graph(3), cycle_graph(3)), c6 = cycle_graph(6);
    auto r = solve_pebble_game(tt, c6, 2, GameMode::count);
    CHECK(r.duplicator_wins());
    CHECK(strategy_closed(r, tt, c6));
    CHECK_FALSE(solve_pebble_game(tt, c6, 3, GameMode::count).duplicator_wins());
    CHECK_THROWS_AS(solve_pebble_game(k3, k2, 0, GameMode::ep), PreconditionError);
}

TEST_CASE("parallel and serial pebble fixpoints agree")
{
    const auto& s = small();
    for (const auto& a : s)
        for (const auto& b : s)
            for (auto m : {GameMode::ep, GameMode::full, GameMode::count})
                for (std::size_t k = 1; k <= 2; ++k) {
                    const auto par = solve_pebble_game(a, b, k, m, PebbleOptions{std::nullopt, true, true});
                    const auto ser = solve_pebble_game(a, b, k, m, PebbleOptions{std::nullopt, false, true});
                    CHECK(par.winner == ser.winner);
                    if (par.duplicator_wins())
                        CHECK(strategy_closed(par, a, b));
                }
}

TEST_CASE("bounded pebble rounds approach the fixpoint from above")
{
    const auto k3 = complete_graph(3), k2 = complete_graph(2);
    bool last = true;
    for (std::size_t r = 0; r <= 4; ++r) {
        PebbleOptions o;
        o.rounds = r;
        const bool d = solve_pebble_game(k3, k2, 3, GameMode::ep, o).duplicator_wins();
        CHECK((last || !d));
        last = d;
    }
    CHECK_FALSE(last);
}

TEST_CASE("modal games")
{
    const auto loop = kripke(1, {{0, 0}}), cycle = kripke(2, {{0, 1}, {1, 0}});
    for (std::size_t k = 0; k <= 4; ++k)
        CHECK(solve_modal_game(loop, cycle, k, GameMode::full).duplicator_wins());
    const auto fork = kripke(3, {{0, 1}, {0, 2}}), one = kripke(2, {{0, 1}});
    CHECK_FALSE(solve_modal_game(fork, one, 1, GameMode::count).duplicator_wins());
    CHECK(solve_modal_game(fork, one, 1, GameMode::full).duplicator_wins());
    // ep: propositions need only be preserved left to right
    const auto p = kripke(1, {}, {0}), q = kripke(1, {});
    CHECK(solve_modal_game(q, p, 1, GameMode::ep).duplicator_wins());
    CHECK_FALSE(solve_modal_game(p, q, 1, GameMode::ep).duplicator_wins());
    CHECK_THROWS_AS(solve_modal_game(complete_graph(2), one, 1, GameMode::full), PreconditionError);
}

TEST_CASE("determinacy, monotonicity and the mode hierarchy")
{
    const auto& s = small();
    for (const auto& a : s)
        for (const auto& b : s) {
            for (std::size_t k = 1; k <= 3; ++k) {
                const bool ep = solve_ef_game(a, b, k, GameMode::ep).duplicator_wins();
                const bool full = solve_ef_game(a, b, k, GameMode::full).duplicator_wins();
                const bool count = solve_ef_game(a, b, k, GameMode::count).duplicator_wins();
                CHECK((!count || full));
                CHECK((!full || ep));
                CHECK(full == solve_ef_game(b, a, k, GameMode::full).duplicator_wins());
                if (full)
                    CHECK(solve_ef_game(a, b, k - 1, GameMode::full).duplicator_wins());
                if (ep)
                    CHECK(solve_ef_game(a, b, k - 1, GameMode::ep).duplicator_wins());
            }
        }
}

TEST_CASE("existential EF wins form a preorder")
{
    const auto s = structures_up_to_iso(edge_vocabulary(), 2);
    const std::size_t n = s.size();
    std::vector<std::vector<bool>> w(n, std::vector<bool>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            w[i][j] = solve_ef_game(s[i], s[j], 2, GameMode::ep).duplicator_wins();
    for (std::size_t i = 0; i < n; ++i) {
        CHECK(w[i][i]);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t l = 0; l < n; ++l)
                if (w[i][j] && w[j][l])
                    CHECK(w[i][l]);
    }
}

TEST_CASE("strategies as coKleisli morphisms")
{
    const auto k2 = complete_graph(2);
    const auto id = solve_ef_game(k2, k2, 2, GameMode::ep);
    const auto cover = build_ef(k2, 2);
    const auto f = strategy_to_cokleisli(id, k2, k2, cover);
    CHECK(check_map(f, cover.structure(), k2, MapMode::hom));

    const auto two = edgeless_graph(2), one = edgeless_graph(1);
    const auto r = solve_ef_game(two, one, 2, GameMode::ep);
    const auto c2 = build_ef(two, 2);
    const auto g = strategy_to_cokleisli(r, two, one, c2);
    for (Element x = 0; x < c2.structure().size(); ++x)
        CHECK(g.at(x) == 0);

    const auto lose = solve_ef_game(linear_order(3), linear_order(2), 2, GameMode::ep);
    CHECK_THROWS_AS(strategy_to_cokleisli(lose, linear_order(3), linear_order(2), build_ef(linear_order(3), 2)),
                    PreconditionError);
}

TEST_CASE("extracted strategies are sound")
{
    const auto& s = small();
    for (const auto& a : s)
        for (const auto& b : s)
            for (std::size_t k = 1; k <= 2; ++k) {
                for (auto m : {GameMode::ep, GameMode::full, GameMode::count}) {
                    const auto r = solve_ef_game(a, b, k, m);
                    if (r.duplicator_wins())
                        CHECK(replay_strategy(r, a, b));
                }
                const auto r = solve_ef_game(a, b, k, GameMode::ep);
                const auto cover = build_ef(a, k);
                if (r.duplicator_wins())
                    CHECK(check_map(strategy_to_cokleisli(r, a, b, cover), cover.structure(), b, MapMode::hom));
                else
                    CHECK_FALSE(has_homomorphism(cover.structure(), b));
            }
    const auto fork = kripke(3, {{0, 1}, {0, 2}}), two = kripke(3, {{0, 1}, {0, 2}}, {1});
    const auto m = solve_modal_game(fork, fork, 2, GameMode::count);
    CHECK(replay_strategy(m, fork, fork));
    CHECK_FALSE(solve_modal_game(fork, two, 1, GameMode::full).duplicator_wins());
}

TEST_CASE("path game on forests")
{
    const auto f = build_ef(cycle_graph(3), 2).forest;
    CHECK(solve_arboreal_game(f, f).duplicator_wins());
    Structure p(Vocabulary{{"P", 1}});
    p.add_element("a");
    Structure q = p;
    p.add_tuple("P", {"a"});
    CHECK_FALSE(solve_arboreal_game(ForestStructure(p), ForestStructure(q)).duplicator_wins());
    ForestStructure bad(complete_graph(2));
    CHECK_THROWS_AS(solve_arboreal_game(bad, bad), PreconditionError);
}

TEST_CASE("path game on covers matches the full EF game once equality is a relation")
{
    const auto& s = small();
    for (const auto& a : s)
        for (const auto& b : s)
            for (std::size_t k = 1; k <= 2; ++k) {
                const auto arb = solve_arboreal_game(build_ef(with_equality(a), k).forest,
                                                     build_ef(with_equality(b), k).forest);
                CHECK(arb.duplicator_wins() == solve_ef_game(a, b, k, GameMode::full).duplicator_wins());
            }
    // without equality the covers of one and two isolated points are bisimilar
    CHECK(solve_arboreal_game(build_ef(edgeless_graph(1), 2).forest, build_ef(edgeless_graph(2), 2).forest)
              .duplicator_wins());
    CHECK_FALSE(solve_ef_game(edgeless_graph(1), edgeless_graph(2), 2, GameMode::full).duplicator_wins());
}

}
