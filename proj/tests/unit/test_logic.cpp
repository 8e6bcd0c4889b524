#include "helpers.hpp"

#include "gc/errors.hpp"
#include "gc/games.hpp"
#include "gc/ef.hpp"
#include "gc/logic.hpp"
#include "gc/modal.hpp"

#include <doctest.h>

#include <set>

using namespace gc;
using gc::test::directed;
using gc::test::kripke;

namespace {

std::vector<const Structure*> pointers(const std::vector<Structure>& v)
{
    std::vector<const Structure*> out;
    for (const auto& s : v)
        out.push_back(&s);
    return out;
}

} // namespace

TEST_SUITE("logic-oracle") {

TEST_CASE("s-expression round trips")
{
    for (const char* text : {"(exists x (E x x))", "(forall x (exists y (and (E x y) (not (= x y)))))",
                             "(geq 2 x true)", "(or (E x y) false)", "(exists x (and (exists y (< y x)) (exists y (< x y))))"}) {
        const auto f = parse_formula(text);
        CHECK(to_sexpr(*f) == text);
    }
    CHECK_THROWS_AS(parse_formula("(exists x"), ParseError);
    CHECK_THROWS_AS(parse_formula("(geq 0 x true)"), ParseError);
    try {
        parse_formula("(and (E x y) ])");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 1);
        CHECK(e.column() == 14);
    }
    for (const char* text : {"(dia R P)", "(gdia 2 R (not P))", "(box R false)", "(and P (dia R true))"})
        CHECK(to_sexpr(*parse_modal_formula(text)) == text);
}

TEST_CASE("rank, size, fragment and free variables")
{
    const auto f = parse_formula("(exists x (and (exists y (< y x)) (exists y (< x y))))");
    CHECK(quantifier_rank(*f) == 2);
    CHECK(formula_size(*f) == 6);
    CHECK(in_fragment(*f, Fragment::ep));
    CHECK(free_variables(*f).empty());
    const auto g = parse_formula("(and (not (E x y)) (= x z))");
    CHECK_FALSE(in_fragment(*g, Fragment::ep));
    CHECK(in_fragment(*g, Fragment::full));
    CHECK(free_variables(*g) == std::vector<std::string>{"x", "y", "z"});
    CHECK_FALSE(in_fragment(*parse_formula("(geq 2 x true)"), Fragment::full));
    CHECK(in_fragment(*parse_formula("(geq 2 x true)"), Fragment::count));
    CHECK(formula_size(*parse_formula("(and (E x x) (E x x) (E x x))")) == 5);
}

TEST_CASE("evaluation")
{
    const auto loop = directed(1, {{0, 0}});
    const auto exx = parse_formula("(exists x (E x x))");
    CHECK(eval_fo(*exx, loop));
    CHECK_FALSE(eval_fo(*exx, complete_graph(2)));
    CHECK_FALSE(eval_fo(*parse_formula("(geq 2 x true)"), edgeless_graph(1)));
    CHECK(eval_fo(*parse_formula("(geq 2 x true)"), edgeless_graph(2)));
    CHECK(eval_fo(*parse_formula("(forall x false)"), Structure(edge_vocabulary())));
    const auto open = parse_formula("(E x y)");
    CHECK(eval_fo(*open, complete_graph(2), Assignment{{"x", 0}, {"y", 1}}));
    CHECK_FALSE(eval_fo(*open, complete_graph(2), Assignment{{"x", 0}, {"y", 0}}));
    CHECK_THROWS_AS(eval_fo(*open, complete_graph(2)), PreconditionError);
    CHECK_THROWS_AS(eval_fo(*parse_formula("(exists x (F x))"), complete_graph(2)), PreconditionError);
}

TEST_CASE("modal evaluation")
{
    const auto dead = kripke(1, {});
    CHECK_FALSE(eval_modal(*parse_modal_formula("(dia R true)"), dead));
    CHECK(eval_modal(*parse_modal_formula("(box R false)"), dead));
    const auto fork = kripke(3, {{0, 1}, {0, 2}}, {1});
    CHECK(eval_modal(*parse_modal_formula("(gdia 2 R true)"), fork));
    CHECK_FALSE(eval_modal(*parse_modal_formula("(gdia 3 R true)"), fork));
    CHECK(eval_modal(*parse_modal_formula("(dia R P)"), fork));
    CHECK_FALSE(eval_modal(*parse_modal_formula("(box R P)"), fork));
    CHECK(eval_modal(*parse_modal_formula("P"), fork, 1));
    // box false and not-dia-true agree everywhere
    const auto bf = parse_modal_formula("(box R false)"), nd = parse_modal_formula("(not (dia R true))");
    for (const auto& k : pointed_structures_up_to_iso(Vocabulary{{"P", 1}, {"R", 2}}, 3))
        for (Element s = 0; s < k.size(); ++s)
            CHECK(eval_modal(*bf, k, s) == eval_modal(*nd, k, s));
    CHECK(modal_depth(*parse_modal_formula("(dia R (gdia 2 R P))")) == 2);
}

TEST_CASE("syntactic enumeration")
{
    std::set<std::string> seen;
    bool has_loop = false;
    enumerate_sentences(edge_vocabulary(), Fragment::ep, 1, 3, [&](const FormulaPtr& f) {
        const auto s = to_sexpr(*f);
        CHECK(seen.insert(s).second);
        CHECK(quantifier_rank(*f) <= 1);
        CHECK(formula_size(*f) <= 3);
        CHECK(in_fragment(*f, Fragment::ep));
        CHECK(free_variables(*f).empty());
        has_loop = has_loop || s == "(exists x (E x x))";
        return true;
    });
    CHECK(has_loop);
    std::size_t zero = 0;
    enumerate_sentences(edge_vocabulary(), Fragment::ep, 0, 5, [&](const FormulaPtr&) { ++zero; return true; });
    CHECK(zero == 0);
    for (auto frag : {Fragment::full, Fragment::count})
        enumerate_sentences(edge_vocabulary(), frag, 2, 5, [&](const FormulaPtr& f) {
            CHECK(quantifier_rank(*f) <= 2);
            CHECK(formula_size(*f) <= 5);
            CHECK(in_fragment(*f, frag));
            return true;
        });
}

TEST_CASE("semantic classes agree with the syntactic stream")
{
    // every syntactically enumerated sentence has a class with the same truth values
    const auto worlds = structures_up_to_iso(edge_vocabulary(), 2);
    for (auto frag : {Fragment::ep, Fragment::full, Fragment::count}) {
        SemanticEnumerator en(pointers(worlds), frag, 2, 5);
        std::set<std::vector<bool>> classes;
        for (const auto& s : en.sentences()) {
            CHECK(formula_size(*s.formula) == s.size);
            CHECK(in_fragment(*s.formula, frag));
            CHECK(quantifier_rank(*s.formula) <= 2);
            for (std::size_t i = 0; i < worlds.size(); ++i)
                CHECK(eval_fo(*s.formula, worlds[i]) == s.truth[i]);
            classes.insert(s.truth);
        }
        CHECK(classes.size() == en.sentences().size());
        enumerate_sentences(edge_vocabulary(), frag, 2, 5, [&](const FormulaPtr& f) {
            std::vector<bool> t;
            for (const auto& w : worlds)
                t.push_back(eval_fo(*f, w));
            const bool trivial = std::all_of(t.begin(), t.end(), [](bool b) { return b; }) ||
                                 std::none_of(t.begin(), t.end(), [](bool b) { return b; });
            if (!trivial)
                CHECK(classes.contains(t));
            return true;
        });
    }
}

TEST_CASE("separators")
{
    const auto l3 = linear_order(3), l2 = linear_order(2), l4 = linear_order(4);
    auto sep = find_separator(l3, l2, 2, Fragment::ep, 12);
    REQUIRE(sep);
    CHECK(to_sexpr(**sep) == "(exists x (and (exists y (< y x)) (exists y (< x y))))");
    CHECK_FALSE(find_separator(l3, l2, 1, Fragment::ep, 12));
    CHECK_FALSE(find_separator(l3, l4, 2, Fragment::full, 9));
    sep = find_separator(l4, l3, 3, Fragment::full, 12);
    REQUIRE(sep);
    CHECK(eval_fo(**sep, l4));
    CHECK_FALSE(eval_fo(**sep, l3));
    CHECK(quantifier_rank(**sep) <= 3);
    const auto csep = find_separator(edgeless_graph(2), edgeless_graph(1), 1, Fragment::count, 4);
    REQUIRE(csep);
    CHECK(to_sexpr(**csep) == "(geq 2 x true)");
}

TEST_CASE("parallel and serial enumeration agree")
{
    const auto worlds = structures_up_to_iso(edge_vocabulary(), 2);
    for (auto frag : {Fragment::ep, Fragment::full, Fragment::count}) {
        SemanticEnumerator par(pointers(worlds), frag, 2, 7, EnumeratorOptions{true, std::nullopt});
        SemanticEnumerator ser(pointers(worlds), frag, 2, 7, EnumeratorOptions{false, std::nullopt});
        REQUIRE(par.sentences().size() == ser.sentences().size());
        CHECK(par.class_count() == ser.class_count());
        for (std::size_t i = 0; i < par.sentences().size(); ++i)
            CHECK(to_sexpr(*par.sentences()[i].formula) == to_sexpr(*ser.sentences()[i].formula));
    }
}

TEST_CASE("rank-k types")
{
    const auto l2 = linear_order(2), l3 = linear_order(3), l4 = linear_order(4);
    CHECK(rank_k_equiv(l3, l4, 2, Fragment::full));
    CHECK_FALSE(rank_k_equiv(l3, l4, 3, Fragment::full));
    CHECK(rank_k_equiv(l3, l2, 1, Fragment::ep));
    CHECK_FALSE(rank_k_equiv(l3, l2, 2, Fragment::ep));
    CHECK(rank_k_equiv(l2, l3, 2, Fragment::ep));
    const auto s = structures_up_to_iso(edge_vocabulary(), 3);
    for (std::size_t i = 0; i < s.size(); i += 3)
        for (std::size_t j = 0; j < s.size(); j += 5)
            for (std::size_t k = 1; k <= 2; ++k) {
                CHECK(rank_k_equiv(s[i], s[j], k, Fragment::full) ==
                      solve_ef_game(s[i], s[j], k, GameMode::full).duplicator_wins());
                const bool count = rank_k_equiv(s[i], s[j], k, Fragment::count);
                CHECK(count == (canonical_forest_code(build_ef(s[i], k).forest) ==
                                canonical_forest_code(build_ef(s[j], k).forest)));
                if (count)
                    CHECK(s[i].size() == s[j].size());
            }
}

TEST_CASE("ep sentences are preserved along homomorphisms")
{
    const auto worlds = structures_up_to_iso(edge_vocabulary(), 2);
    SemanticEnumerator en(pointers(worlds), Fragment::ep, 2, 9);
    for (std::size_t i = 0; i < worlds.size(); ++i)
        for (std::size_t j = 0; j < worlds.size(); ++j)
            if (has_homomorphism(worlds[i], worlds[j]))
                CHECK_FALSE(en.separator(i, j));
}

TEST_CASE("graded distinguishers")
{
    const auto fork = kripke(3, {{0, 1}, {0, 2}}), one = kripke(2, {{0, 1}});
    auto phi = graded_distinguisher(fork, one, 1);
    REQUIRE(phi);
    CHECK(modal_depth(**phi) <= 1);
    CHECK(eval_modal(**phi, fork));
    CHECK_FALSE(eval_modal(**phi, one));
    CHECK_FALSE(graded_distinguisher(fork, one, 0));
    CHECK_FALSE(graded_distinguisher(kripke(1, {{0, 0}}), kripke(2, {{0, 1}, {1, 0}}), 3));

    const auto all = pointed_structures_up_to_iso(Vocabulary{{"P", 1}, {"R", 2}}, 2);
    ModalEnumerator en(pointers(all), 2, 6, 3);
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = 0; j < all.size(); ++j) {
            const auto d = graded_distinguisher(all[i], all[j], 2);
            CHECK(d.has_value() == !graded_equivalence(all[i], all[j], 3));
            if (d) {
                CHECK(eval_modal(**d, all[i]));
                CHECK_FALSE(eval_modal(**d, all[j]));
            } else {
                CHECK_FALSE(en.separator(i, j));
            }
        }
}

}
