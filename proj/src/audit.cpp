#include "gc/audit.hpp"

#include "gc/builders.hpp"
#include "gc/ef.hpp"
#include "gc/games.hpp"
#include "gc/homcount.hpp"
#include "gc/logic.hpp"
#include "gc/modal.hpp"
#include "gc/parameters.hpp"
#include "gc/pebble.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_map>

namespace gc {

namespace {

constexpr std::size_t separator_size_bound = 12;

struct Outcome {
    bool ok = true;
    std::string detail;
    std::size_t failures = 0;
    std::string first_failure;

    void fail(const std::string& what)
    {
        ok = false;
        if (failures++ == 0)
            first_failure = what;
    }
    void finish(const std::string& summary)
    {
        detail = summary;
        if (!ok)
            detail += "; " + std::to_string(failures) + " failure(s), first: " + first_failure;
    }
};

std::string pair_label(std::size_t i, std::size_t j, std::size_t k)
{
    return "pair (" + std::to_string(i) + "," + std::to_string(j) + ") k=" + std::to_string(k);
}

// Shared suite: structures over {E/2} with at most 3 elements, one per isomorphism class.
struct Suite {
    std::vector<Structure> structures = structures_up_to_iso(edge_vocabulary(), 3);
    std::vector<const Structure*> worlds() const
    {
        std::vector<const Structure*> w;
        for (const auto& s : structures)
            w.push_back(&s);
        return w;
    }
};

const Suite& suite()
{
    static const Suite s;
    return s;
}

const SemanticEnumerator& ep_enumerator(std::size_t k, bool parallel)
{
    static std::map<std::size_t, SemanticEnumerator> cache;
    auto it = cache.find(k);
    if (it == cache.end())
        it = cache.emplace(k, SemanticEnumerator(suite().worlds(), Fragment::ep, k, separator_size_bound,
                                                 EnumeratorOptions{parallel, std::nullopt}))
                 .first;
    return it->second;
}

Outcome criterion1(const AuditOptions& opt)
{
    Outcome out;
    const auto& S = suite().structures;
    std::size_t checks = 0, spoiler = 0;
    for (std::size_t k = 1; k <= 2; ++k) {
        const auto& en = ep_enumerator(k, opt.parallel);
        std::vector<EFCover> covers;
        for (const auto& a : S)
            covers.push_back(build_ef(a, k));
        for (std::size_t i = 0; i < S.size(); ++i)
            for (std::size_t j = 0; j < S.size(); ++j) {
                ++checks;
                const bool hom = has_homomorphism(covers[i].structure(), S[j]);
                const auto game = solve_ef_game(S[i], S[j], k, GameMode::ep);
                const bool types = rank_k_equiv(S[i], S[j], k, Fragment::ep);
                if (hom != game.duplicator_wins() || hom != types) {
                    out.fail(pair_label(i, j, k) + ": hom=" + std::to_string(hom) +
                             " game=" + std::to_string(game.duplicator_wins()) + " types=" + std::to_string(types));
                    continue;
                }
                if (game.duplicator_wins()) {
                    auto f = strategy_to_cokleisli(game, S[i], S[j], covers[i]);
                    if (!check_map(f, covers[i].structure(), S[j], MapMode::hom))
                        out.fail(pair_label(i, j, k) + ": extracted coKleisli map is not a homomorphism");
                    continue;
                }
                ++spoiler;
                auto sep = en.separator(i, j);
                if (!sep) {
                    out.fail(pair_label(i, j, k) + ": Spoiler wins but no separating sentence within the bound");
                    continue;
                }
                const auto& phi = **sep;
                if (!eval_fo(phi, S[i]) || eval_fo(phi, S[j]) || quantifier_rank(phi) > k ||
                    formula_size(phi) > separator_size_bound || !in_fragment(phi, Fragment::ep))
                    out.fail(pair_label(i, j, k) + ": bad separator " + to_sexpr(phi));
            }
    }
    out.finish(std::to_string(checks) + " triples agree (hom / ep game / ep types), " + std::to_string(spoiler) +
               " Spoiler wins each with an ep separator of size <= 12");
    return out;
}

Outcome criterion2(const AuditOptions&)
{
    Outcome out;
    const auto& S = suite().structures;
    std::size_t checks = 0, dup = 0;
    for (std::size_t k = 1; k <= 2; ++k)
        for (std::size_t i = 0; i < S.size(); ++i)
            for (std::size_t j = 0; j < S.size(); ++j) {
                ++checks;
                const auto game = solve_ef_game(S[i], S[j], k, GameMode::full);
                const bool types = rank_k_equiv(S[i], S[j], k, Fragment::full);
                dup += game.duplicator_wins();
                if (game.duplicator_wins() != types)
                    out.fail(pair_label(i, j, k));
                else if (game.duplicator_wins() && !replay_strategy(game, S[i], S[j]))
                    out.fail(pair_label(i, j, k) + ": strategy fails replay");
            }
    out.finish(std::to_string(checks) + " pairs, full game = full types (" + std::to_string(dup) + " Duplicator wins)");
    return out;
}

Outcome criterion3(const AuditOptions&)
{
    Outcome out;
    const auto& S = suite().structures;
    std::size_t checks = 0, eq = 0;
    for (std::size_t k = 1; k <= 2; ++k) {
        std::vector<std::string> codes;
        for (const auto& a : S)
            codes.push_back(canonical_forest_code(build_ef(a, k).forest));
        for (std::size_t i = 0; i < S.size(); ++i)
            for (std::size_t j = 0; j < S.size(); ++j) {
                ++checks;
                const bool code = codes[i] == codes[j];
                const auto game = solve_ef_game(S[i], S[j], k, GameMode::count);
                const bool types = rank_k_equiv(S[i], S[j], k, Fragment::count);
                eq += code;
                if (code != game.duplicator_wins() || code != types)
                    out.fail(pair_label(i, j, k) + ": code=" + std::to_string(code) +
                             " game=" + std::to_string(game.duplicator_wins()) + " types=" + std::to_string(types));
            }
    }
    out.finish(std::to_string(checks) + " pairs, cover isomorphism = bijection game = counting types (" +
               std::to_string(eq) + " equivalent)");
    return out;
}

Structure relabel(const Structure& s, std::mt19937_64& rng)
{
    std::vector<Element> perm(s.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Element> inverse(s.size());
    for (Element i = 0; i < s.size(); ++i)
        inverse[perm[i]] = i;
    Structure t(s.vocabulary());
    for (Element i = 0; i < s.size(); ++i)
        t.add_element(s.name(inverse[i]));
    for (std::size_t r = 0; r < s.vocabulary().size(); ++r)
        for (const auto& tup : s.table(r)) {
            Tuple u;
            for (auto e : tup)
                u.push_back(perm[e]);
            t.add_tuple(r, u);
        }
    if (s.point())
        t.set_point(perm[*s.point()]);
    return t;
}

Outcome criterion4(const AuditOptions& opt)
{
    Outcome out;
    std::mt19937_64 rng(opt.seed);
    std::size_t n = 0;
    for (const auto& g : graphs_up_to_iso(6)) {
        if (g.empty())
            continue;
        ++n;
        const auto c = ef_coalgebra_number(g, g.size());
        const auto td = tree_depth(g);
        if (!c.value || *c.value != td)
            out.fail("graph " + std::to_string(n) + ": coalgebra number " +
                     (c.value ? std::to_string(*c.value) : std::string("none")) + " vs tree-depth " +
                     std::to_string(td));
        if (tree_depth(relabel(g, rng)) != td)
            out.fail("graph " + std::to_string(n) + ": tree-depth not invariant under relabeling");
    }
    out.finish(std::to_string(n) + " graphs, EF coalgebra number = tree-depth");
    return out;
}

Outcome criterion5(const AuditOptions& opt)
{
    Outcome out;
    std::mt19937_64 rng(opt.seed ^ 0x5bd1e995u);
    std::size_t n = 0;
    for (const auto& g : graphs_up_to_iso(5)) {
        if (g.empty())
            continue;
        ++n;
        const auto c = pebble_coalgebra_number(g, g.size());
        const auto tw = treewidth(g);
        if (!c.value || *c.value != tw + 1)
            out.fail("graph " + std::to_string(n) + ": pebble coalgebra number " +
                     (c.value ? std::to_string(*c.value) : std::string("none")) + " vs treewidth " +
                     std::to_string(tw));
        if (treewidth(relabel(g, rng)) != tw)
            out.fail("graph " + std::to_string(n) + ": treewidth not invariant under relabeling");
    }
    out.finish(std::to_string(n) + " graphs, pebble coalgebra number = treewidth + 1");
    return out;
}

Outcome criterion6(const AuditOptions&)
{
    Outcome out;
    std::size_t law_checks = 0, factorizations = 0;
    const auto bases = structures_up_to_iso(edge_vocabulary(), 2);
    std::vector<Structure> tests;
    for (std::size_t n = 1; n <= 3; ++n)
        for (auto& t : structures_up_to_iso(edge_vocabulary(), n))
            if (t.size() == n)
                tests.push_back(std::move(t));

    for (const auto& a : bases)
        for (std::size_t k = 1; k <= 3; ++k) {
            const auto cover = build_ef(a, k);
            // counit is a homomorphism
            ++law_checks;
            if (!check_map(counit_map(cover), cover.structure(), a, MapMode::hom))
                out.fail("counit not a homomorphism, k=" + std::to_string(k));
            // pointwise laws
            for (const auto& s : cover.sequences) {
                const auto d = comultiplication_of(s);
                law_checks += 3;
                if (d.back() != s)
                    out.fail("counit after comultiplication is not the identity");
                Sequence lasts;
                for (const auto& p : d)
                    lasts.push_back(counit_of(p));
                if (lasts != s)
                    out.fail("G(counit) after comultiplication is not the identity");
                // delta_G . delta versus G(delta) . delta, as nested sequences
                std::vector<std::vector<Sequence>> lhs, rhs;
                for (std::size_t i = 1; i <= d.size(); ++i)
                    lhs.emplace_back(d.begin(), d.begin() + static_cast<long>(i));
                for (const auto& p : d)
                    rhs.push_back(comultiplication_of(p));
                if (lhs != rhs)
                    out.fail("coassociativity fails");
            }
            // comultiplication is a homomorphism into the doubled cover
            if (a.size() <= 2 && k <= 3) {
                const auto twice = build_ef(cover.structure(), k);
                ElementMap delta(cover.sequences.size());
                for (Element x = 0; x < cover.sequences.size(); ++x) {
                    Sequence outer;
                    for (const auto& p : comultiplication_of(cover.sequences[x]))
                        outer.push_back(cover.element_of(p));
                    delta.set(x, twice.element_of(outer));
                }
                ++law_checks;
                if (!check_map(delta, cover.structure(), twice.structure(), MapMode::hom))
                    out.fail("comultiplication not a homomorphism, k=" + std::to_string(k));
            }
            // couniversality: every (T, f) factors uniquely through the counit
            for (const auto& t : tests)
                for_each_forest_order(t, k, [&](const std::vector<std::optional<Element>>& parent) {
                    ForestStructure tf(t);
                    tf.parent = parent;
                    for (const auto& f : search_homomorphisms(t, a)) {
                        ++factorizations;
                        const auto ext = cokleisli_extend(f, tf, a, cover);
                        bool good = check_forest_morphism(ext, tf, cover.forest);
                        for (Element x = 0; x < t.size(); ++x)
                            good = good && counit_of(cover.sequences[ext.at(x)]) == f.at(x);
                        if (!good) {
                            out.fail("extension is not a factorization");
                            continue;
                        }
                        // uniqueness among maps with the right counit images
                        std::vector<std::vector<Element>> cand(t.size());
                        for (Element x = 0; x < t.size(); ++x)
                            for (Element y = 0; y < cover.sequences.size(); ++y)
                                if (counit_of(cover.sequences[y]) == f.at(x))
                                    cand[x].push_back(y);
                        std::size_t found = 0;
                        std::vector<std::size_t> idx(t.size(), 0);
                        for (;;) {
                            ElementMap g(t.size());
                            for (Element x = 0; x < t.size(); ++x)
                                g.set(x, cand[x][idx[x]]);
                            if (check_forest_morphism(g, tf, cover.forest)) {
                                ++found;
                                if (!(g == ext))
                                    out.fail("second factorization found");
                            }
                            std::size_t p = 0;
                            while (p < t.size() && ++idx[p] == cand[p].size())
                                idx[p++] = 0;
                            if (p == t.size())
                                break;
                        }
                        if (found != 1)
                            out.fail("factorization count " + std::to_string(found));
                    }
                    return true;
                });
        }
    out.finish(std::to_string(law_checks) + " law checks and " + std::to_string(factorizations) +
               " unique factorizations, |A| <= 2, k <= 3");
    return out;
}

Outcome criterion7(const AuditOptions&)
{
    Outcome out;
    const auto& S = suite().structures;
    std::size_t checks = 0;
    for (std::size_t k = 1; k <= 2; ++k) {
        std::vector<EFCover> covers;
        // Partial isomorphisms reflect equality, so the covers carry it as a relation.
        for (const auto& a : S)
            covers.push_back(build_ef(with_equality(a), k));
        for (std::size_t i = 0; i < S.size(); ++i)
            for (std::size_t j = 0; j < S.size(); ++j) {
                ++checks;
                const auto arb = solve_arboreal_game(covers[i].forest, covers[j].forest);
                const auto ef = solve_ef_game(S[i], S[j], k, GameMode::full);
                if (arb.duplicator_wins() != ef.duplicator_wins())
                    out.fail(pair_label(i, j, k));
            }
    }
    out.finish(std::to_string(checks) + " pairs, path game on covers with equality = full EF game");
    return out;
}

Outcome criterion8(const AuditOptions&)
{
    Outcome out;
    const auto k3 = complete_graph(3), k2 = complete_graph(2);
    const auto two_triangles = disjoint_union(cycle_graph(3), cycle_graph(3));
    const auto hexagon = cycle_graph(6);
    auto expect = [&](const Structure& a, const Structure& b, std::size_t k, GameMode m, Winner w, const char* what) {
        const auto r = solve_pebble_game(a, b, k, m);
        if (r.winner != w)
            out.fail(std::string(what) + " gave " + to_string(r.winner));
        if (r.duplicator_wins() && !strategy_closed(r, a, b))
            out.fail(std::string(what) + ": strategy not closed");
        const auto serial = solve_pebble_game(a, b, k, m, PebbleOptions{std::nullopt, false, false});
        if (serial.winner != r.winner)
            out.fail(std::string(what) + ": serial fixpoint disagrees");
    };
    expect(k3, k2, 2, GameMode::ep, Winner::duplicator, "(K3,K2,2,ep)");
    expect(k3, k2, 3, GameMode::ep, Winner::spoiler, "(K3,K2,3,ep)");
    expect(two_triangles, hexagon, 2, GameMode::count, Winner::duplicator, "(2C3,C6,2,count)");
    expect(two_triangles, hexagon, 3, GameMode::count, Winner::spoiler, "(2C3,C6,3,count)");
    const auto lz = lovasz_test(two_triangles, hexagon, 3);
    if (!lz.distinguished || !lz.witness || !is_isomorphic(*lz.witness, k3) || lz.count_a != 12 || lz.count_b != 0)
        out.fail("Lovasz test did not return K3 with counts 12 / 0");
    out.finish("K3 vs K2 at 2 and 3 pebbles, 2C3 vs C6 bijective at 2 and 3 pebbles, K3 separates with 12 vs 0");
    return out;
}

Outcome criterion9(const AuditOptions&)
{
    Outcome out;
    Vocabulary vocab;
    vocab.add("P", 1);
    vocab.add("R", 2);
    const auto ks = pointed_structures_up_to_iso(vocab, 3);
    std::vector<const Structure*> worlds;
    for (const auto& k : ks)
        worlds.push_back(&k);
    std::size_t checks = 0, distinguished = 0, sampled = 0;
    for (std::size_t depth = 1; depth <= 3; ++depth) {
        std::vector<std::string> codes;
        for (const auto& k : ks) {
            checks += 2;
            if (!check_modal_idempotence(k, depth))
                out.fail("idempotence fails at depth " + std::to_string(depth));
            const auto u = unravel(k, depth);
            if (!validate_forest_structure(u.forest).valid())
                out.fail("invalid unravelling");
            if (!solve_modal_game(u.structure(), k, depth - 1, GameMode::full).duplicator_wins() ||
                !solve_modal_game(u.structure(), k, depth - 1, GameMode::count).duplicator_wins())
                out.fail("unravelling not bisimilar to its base at depth " + std::to_string(depth));
            codes.push_back(canonical_forest_code(u.forest));
        }
        // graded falsifier: formulas of modal depth <= depth - 1
        const std::size_t md = depth - 1;
        ModalEnumerator en(worlds, md, 7, 3);
        // Group by code and by enumerated-formula truth at the point.
        std::map<std::string, std::size_t> code_class;
        std::vector<std::size_t> cls(ks.size());
        for (std::size_t i = 0; i < ks.size(); ++i)
            cls[i] = code_class.emplace(codes[i], code_class.size()).first->second;
        std::vector<std::size_t> rep(code_class.size(), ks.size());
        for (std::size_t i = 0; i < ks.size(); ++i)
            if (rep[cls[i]] == ks.size())
                rep[cls[i]] = i;
        // equivalent worlds are never separated by an enumerated formula
        for (std::size_t i = 0; i < ks.size(); ++i) {
            const auto r = rep[cls[i]];
            ++checks;
            if (r != i && en.separator(r, i))
                out.fail("graded-equivalent structures separated by " + to_sexpr(**en.separator(r, i)));
            if (r != i && !graded_equivalence(ks[r], ks[i], depth))
                out.fail("graded_equivalence disagrees with code classes");
        }
        // inequivalent class representatives are separated by a verified graded formula
        for (std::size_t a = 0; a < rep.size(); ++a)
            for (std::size_t b = 0; b < rep.size(); ++b) {
                if (a == b)
                    continue;
                const auto& x = ks[rep[a]];
                const auto& y = ks[rep[b]];
                ++checks;
                auto phi = graded_distinguisher(x, y, md);
                if (!phi || modal_depth(**phi) > md || !eval_modal(**phi, x) || eval_modal(**phi, y)) {
                    out.fail("no verified graded distinguisher between classes at depth " + std::to_string(depth));
                    continue;
                }
                ++distinguished;
                if (sampled < 2000 && (a + b) % 7 == 0) {
                    ++sampled;
                    if (graded_equivalence(x, y, depth))
                        out.fail("graded_equivalence reports equivalence for distinguished pair");
                }
            }
        // structures with equal unravellings have equal graded types
        for (std::size_t i = 0; i < ks.size(); ++i) {
            const auto r = rep[cls[i]];
            if (r != i && graded_distinguisher(ks[r], ks[i], md))
                out.fail("graded distinguisher separates structures with equal unravellings");
        }
    }
    out.finish(std::to_string(ks.size()) + " pointed Kripke structures, depth <= 3: idempotence, bisimilar companion, " +
               std::to_string(distinguished) + " verified graded distinguishers, " + std::to_string(checks) + " checks");
    return out;
}

Outcome criterion10(const AuditOptions& opt)
{
    Outcome out;
    const auto graphs = graphs_up_to_iso(4);
    std::size_t checks = 0;
    for (std::size_t i = 0; i < graphs.size(); ++i)
        for (std::size_t j = 0; j < graphs.size(); ++j) {
            ++checks;
            const auto r = lovasz_test(graphs[i], graphs[j], 4, TestFamily::automatic, opt.parallel);
            if (r.distinguished == is_isomorphic(graphs[i], graphs[j]))
                out.fail("graphs " + std::to_string(i) + "," + std::to_string(j));
        }
    out.finish(std::to_string(checks) + " pairs of graphs with <= 4 vertices, hom-count profile decides isomorphism");
    return out;
}

Outcome criterion11(const AuditOptions&)
{
    Outcome out;
    const auto a = edgeless_graph(2);
    const auto once = build_ef(a, 2);
    const auto twice = build_ef(once.structure(), 2);
    if (once.sequences.size() != 6 || twice.sequences.size() != 42)
        out.fail("sizes " + std::to_string(once.sequences.size()) + " and " + std::to_string(twice.sequences.size()));
    if (is_isomorphic(once.structure(), twice.structure()))
        out.fail("covers isomorphic");
    const auto k2 = complete_graph(2);
    if (build_ef(build_ef(k2, 2).structure(), 2).sequences.size() != 42)
        out.fail("K2 doubled cover size");
    out.finish("|E2 A| = " + std::to_string(once.sequences.size()) + ", |E2 E2 A| = " +
               std::to_string(twice.sequences.size()));
    return out;
}

Outcome criterion12(const AuditOptions& opt)
{
    Outcome out;
    const auto& S = suite().structures;
    const auto& en = ep_enumerator(2, opt.parallel);
    // enumerator truth values are re-checked by direct evaluation
    for (const auto& s : en.sentences())
        for (std::size_t i = 0; i < S.size(); ++i)
            if (eval_fo(*s.formula, S[i]) != s.truth[i]) {
                out.fail("enumerator truth table wrong for " + to_sexpr(*s.formula));
                break;
            }
    std::size_t homs = 0;
    for (std::size_t i = 0; i < S.size(); ++i)
        for (std::size_t j = 0; j < S.size(); ++j) {
            if (search_homomorphisms(S[i], S[j], 1).empty())
                continue;
            ++homs;
            if (auto sep = en.separator(i, j))
                out.fail(pair_label(i, j, 2) + ": " + to_sexpr(**sep) + " not preserved");
        }
    out.finish(std::to_string(homs) + " homomorphic pairs, " + std::to_string(en.sentences().size()) +
               " ep sentence classes (rank <= 2, size <= 12, " + std::to_string(en.class_count()) +
               " classes in all) preserved");
    return out;
}

struct Criterion {
    int id;
    const char* title;
    double limit;
    Outcome (*run)(const AuditOptions&);
};

const Criterion criteria[] = {
    {1, "ep EF cover homomorphism = ep game = ep types, with separators", 180, criterion1},
    {2, "full EF game = rank-k types", 120, criterion2},
    {3, "cover isomorphism = bijection game = counting types", 180, criterion3},
    {4, "EF coalgebra number = tree-depth (graphs <= 6)", 300, criterion4},
    {5, "pebble coalgebra number = treewidth + 1 (graphs <= 5)", 300, criterion5},
    {6, "comonad laws and couniversality of the EF cover", 60, criterion6},
    {7, "path game on covers = full EF game", 180, criterion7},
    {8, "pebble landmark verdicts and K3 separator", 30, criterion8},
    {9, "modal idempotence, bisimilar companion, graded falsifier", 180, criterion9},
    {10, "hom-count profiles decide isomorphism (graphs <= 4)", 240, criterion10},
    {11, "non-idempotence of the EF comonad", 1, criterion11},
    {12, "ep sentences preserved along homomorphisms", 120, criterion12},
};

} // namespace

std::vector<CriterionResult> run_audit(const AuditOptions& options,
                                       const std::function<void(const CriterionResult&)>& on_result)
{
    std::vector<CriterionResult> results;
    for (const auto& c : criteria) {
        if (options.only && !options.only->contains(c.id))
            continue;
        CriterionResult r;
        r.id = c.id;
        r.title = c.title;
        r.limit_seconds = c.limit;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run(options);
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
            o.finish("aborted");
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        r.checks_ok = o.ok;
        r.passed = o.ok && r.seconds < c.limit;
        r.detail = o.detail;
        if (o.ok && !r.passed)
            r.detail += "; time limit exceeded";
        if (on_result)
            on_result(r);
        results.push_back(std::move(r));
    }
    return results;
}

std::string format_result(const CriterionResult& r)
{
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2f s / %.0f s", r.seconds, r.limit_seconds);
    return std::string(r.passed ? "[PASS] " : "[FAIL] ") + std::to_string(r.id) + " " + r.title + " (" + timing +
           "): " + r.detail;
}

} // namespace gc
