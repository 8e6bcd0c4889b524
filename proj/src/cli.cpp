#include "gc/cli.hpp"

#include "gc/audit.hpp"
#include "gc/builders.hpp"
#include "gc/ef.hpp"
#include "gc/errors.hpp"
#include "gc/games.hpp"
#include "gc/homcount.hpp"
#include "gc/io.hpp"
#include "gc/logic.hpp"
#include "gc/modal.hpp"
#include "gc/parameters.hpp"
#include "gc/pebble.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <omp.h>

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

namespace gc::cli {

namespace {

using json = nlohmann::ordered_json;

struct Globals {
    bool pretty = false;
    bool timing = false;
    std::uint64_t seed = AuditOptions{}.seed;
    int jobs = 0;
};

Structure load_structure(const std::string& path) { return parse_structure(read_file(path)); }

void require_same_vocabulary(const Structure& a, const Structure& b)
{
    if (a.vocabulary() != b.vocabulary())
        throw PreconditionError("the two structures have different vocabularies");
}
ForestStructure load_forest(const std::string& path) { return parse_forest(read_file(path)); }

bool looks_like_forest(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string word;
        ls >> word;
        if (word == "parent" || word == "pebble" || word == "pebbles")
            return true;
    }
    return false;
}

json map_json(const ElementMap& f, const Structure& from, const Structure& to)
{
    json m = json::object();
    for (Element x = 0; x < f.source_size(); ++x)
        m[from.name(x)] = to.name(f.at(x));
    return m;
}

json strategy_json(const GameResult& r, const Structure& a, const Structure& b, std::size_t cap)
{
    json entries = json::array();
    for (const auto& e : r.strategy) {
        if (entries.size() >= cap)
            break;
        json j;
        json pos = json::array();
        for (const auto& slot : e.position)
            pos.push_back(slot ? json::array({a.name(slot->first), b.name(slot->second)}) : json(nullptr));
        j["position"] = pos;
        if (r.kind == GameKind::ef || r.kind == GameKind::modal)
            j["rounds_left"] = e.rounds_left;
        if (!e.bijection.empty() || (r.mode == GameMode::count && r.kind != GameKind::arboreal)) {
            if (r.kind == GameKind::pebble)
                j["pebble"] = e.move.slot + 1;
            json bij = json::array();
            if (r.kind == GameKind::modal) {
                j["relation"] = a.vocabulary()[e.move.relation].name;
                const auto left = successors(a, e.move.relation, e.position[0]->first);
                for (std::size_t i = 0; i < left.size(); ++i)
                    bij.push_back(json::array({a.name(left[i]), b.name(e.bijection[i])}));
            } else {
                for (Element x = 0; x < e.bijection.size(); ++x)
                    bij.push_back(json::array({a.name(x), b.name(e.bijection[x])}));
            }
            j["bijection"] = bij;
        } else {
            json mv;
            mv["side"] = e.move.side == Side::left ? "left" : "right";
            if (r.kind == GameKind::pebble)
                mv["pebble"] = e.move.slot + 1;
            if (r.kind == GameKind::modal)
                mv["relation"] = a.vocabulary()[e.move.relation].name;
            const auto& mover = e.move.side == Side::left ? a : b;
            const auto& answerer = e.move.side == Side::left ? b : a;
            mv["element"] = mover.name(e.move.element);
            j["move"] = mv;
            j["response"] = answerer.name(e.response);
        }
        entries.push_back(std::move(j));
    }
    json w;
    w["entries"] = r.strategy.size();
    if (r.strategy.size() > cap)
        w["truncated_to"] = cap;
    w["table"] = std::move(entries);
    return w;
}

json game_json(const GameResult& r)
{
    json j;
    j["winner"] = to_string(r.winner);
    return j;
}

GameMode mode_from(const std::string& s)
{
    auto m = parse_game_mode(s);
    if (!m)
        throw PreconditionError("unknown mode '" + s + "' (expected ep, full or count)");
    return *m;
}

Fragment fragment_for(GameMode m)
{
    return m == GameMode::ep ? Fragment::ep : m == GameMode::full ? Fragment::full : Fragment::count;
}

} // namespace

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err)
{
    CLI::App app("Game comonads on finite relational structures", "gc");
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_flag("--pretty", g.pretty, "Indented JSON output");
    app.add_flag("--timing", g.timing, "Add wall-clock timing_ms to JSON output");
    app.add_option("--seed", g.seed, "Seed for randomized checks");
    app.add_option("--jobs", g.jobs, "Maximum worker threads")->check(CLI::PositiveNumber);

    std::function<json()> action;
    std::function<void()> text_action; // commands that print a file rendering instead of JSON
    int exit_code = 0;

    auto emit = [&](json j, double ms) {
        if (g.timing)
            j["timing_ms"] = ms;
        out << j.dump(g.pretty ? 2 : -1) << "\n";
    };

    // fmt
    std::string fmt_file;
    bool fmt_forest = false;
    auto* fmt = app.add_subcommand("fmt", "Validate a structure or forest file and print its canonical form");
    fmt->add_option("file", fmt_file)->required();
    fmt->add_flag("--forest", fmt_forest, "Parse as a forest file");
    fmt->callback([&] {
        text_action = [&] {
            const auto text = read_file(fmt_file);
            if (fmt_forest || looks_like_forest(text)) {
                auto f = parse_forest(text);
                require_valid(f);
                out << render_forest(f);
            } else {
                out << render_structure(parse_structure(text));
            }
        };
    });

    // hom / iso
    std::string file_a, file_b;
    bool count = false;
    auto* hom = app.add_subcommand("hom", "Homomorphism existence (or --count)");
    hom->add_option("A", file_a)->required();
    hom->add_option("B", file_b)->required();
    hom->add_flag("--count", count, "Count homomorphisms");
    hom->callback([&] {
        action = [&] {
            const auto a = load_structure(file_a), b = load_structure(file_b);
            require_same_vocabulary(a, b);
            json j;
            if (count) {
                j["value"] = count_homomorphisms(a, b);
                return j;
            }
            auto found = search_homomorphisms(a, b, 1);
            j["verdict"] = !found.empty();
            j["witness"] = found.empty() ? json(nullptr) : map_json(found[0], a, b);
            return j;
        };
    });
    auto* iso = app.add_subcommand("iso", "Isomorphism test");
    iso->add_option("A", file_a)->required();
    iso->add_option("B", file_b)->required();
    iso->callback([&] {
        action = [&] {
            const auto a = load_structure(file_a), b = load_structure(file_b);
            require_same_vocabulary(a, b);
            auto f = find_isomorphism(a, b);
            json j;
            j["verdict"] = f.has_value();
            j["witness"] = f ? map_json(*f, a, b) : json(nullptr);
            return j;
        };
    });

    // games
    std::size_t k = 0;
    std::string mode = "full";
    std::size_t size_bound = 12;
    std::size_t max_strategy = 10000;
    std::optional<std::size_t> rounds;
    bool serial = false;
    auto game_opts = [&](CLI::App* c, bool pebble) {
        c->add_option("--k", k, pebble ? "Number of pebbles" : "Number of rounds")->required();
        c->add_option("--mode", mode, "ep, full or count")->check(CLI::IsMember({"ep", "full", "count"}));
        c->add_option("A", file_a)->required();
        c->add_option("B", file_b)->required();
        c->add_option("--max-strategy", max_strategy, "Strategy table entries to print");
    };
    auto* ef = app.add_subcommand("ef", "Ehrenfeucht-Fraisse game");
    game_opts(ef, false);
    ef->add_option("--size-bound", size_bound, "Size bound for separating sentences");
    ef->callback([&] {
        action = [&] {
            const auto a = load_structure(file_a), b = load_structure(file_b);
            const auto m = mode_from(mode);
            const auto r = solve_ef_game(a, b, k, m);
            json j = game_json(r);
            if (r.duplicator_wins()) {
                j["witness"] = strategy_json(r, a, b, max_strategy);
            } else {
                auto sep = find_separator(a, b, k, fragment_for(m), size_bound);
                j["witness"] = sep ? json(to_sexpr(**sep)) : json(nullptr);
            }
            return j;
        };
    });
    auto* pebble = app.add_subcommand("pebble", "k-pebble game (greatest fixpoint)");
    game_opts(pebble, true);
    pebble->add_option("--rounds", rounds, "Bounded-round variant");
    pebble->add_flag("--serial", serial, "Use the serial reference fixpoint");
    pebble->callback([&] {
        action = [&] {
            const auto a = load_structure(file_a), b = load_structure(file_b);
            PebbleOptions po;
            po.rounds = rounds;
            po.parallel = !serial;
            const auto r = solve_pebble_game(a, b, k, mode_from(mode), po);
            json j = game_json(r);
            if (rounds)
                j["rounds"] = *rounds;
            j["witness"] = r.duplicator_wins() && !rounds ? strategy_json(r, a, b, max_strategy) : json(nullptr);
            return j;
        };
    });
    auto* modal = app.add_subcommand("modal", "k-round bisimulation game between pointed Kripke structures");
    game_opts(modal, false);
    modal->add_option("--size-bound", size_bound, "Size bound for separating formulas");
    modal->callback([&] {
        action = [&] {
            const auto a = load_structure(file_a), b = load_structure(file_b);
            const auto m = mode_from(mode);
            const auto r = solve_modal_game(a, b, k, m);
            json j = game_json(r);
            if (r.duplicator_wins()) {
                j["witness"] = strategy_json(r, a, b, max_strategy);
            } else if (m == GameMode::count) {
                auto phi = graded_distinguisher(a, b, k);
                j["witness"] = phi ? json(to_sexpr(**phi)) : json(nullptr);
            } else if (m == GameMode::full) {
                ModalEnumerator en({&a, &b}, k, size_bound, 1);
                auto phi = en.separator(0, 1);
                j["witness"] = phi ? json(to_sexpr(**phi)) : json(nullptr);
            } else {
                j["witness"] = nullptr;
            }
            return j;
        };
    });
    std::string forest_a, forest_b;
    auto* arb = app.add_subcommand("arb", "Path game between two forest structures");
    arb->add_option("F1", forest_a)->required();
    arb->add_option("F2", forest_b)->required();
    arb->add_option("--max-strategy", max_strategy, "Strategy table entries to print");
    arb->callback([&] {
        action = [&] {
            const auto f1 = load_forest(forest_a), f2 = load_forest(forest_b);
            const auto r = solve_arboreal_game(f1, f2);
            json j = game_json(r);
            j["witness"] = r.duplicator_wins() ? strategy_json(r, f1.base, f2.base, max_strategy) : json(nullptr);
            return j;
        };
    });

    // comonad covers
    std::size_t length = 0;
    auto* gk = app.add_subcommand("gk", "Print the EF cover in forest format");
    gk->add_option("--k", k)->required();
    gk->add_option("A", file_a)->required();
    gk->callback([&] { text_action = [&] { out << render_forest(build_ef(load_structure(file_a), k).forest); }; });
    auto* pk = app.add_subcommand("pk", "Print a truncated pebble cover in forest format");
    pk->add_option("--k", k)->required();
    pk->add_option("--n", length, "Maximum play length")->required();
    pk->add_option("A", file_a)->required();
    pk->callback([&] {
        text_action = [&] { out << render_forest(build_pebble_truncated(load_structure(file_a), k, length).forest); };
    });
    auto* unr = app.add_subcommand("unravel", "Print the depth-k unravelling in forest format");
    unr->add_option("--k", k, "Maximum walk length in nodes")->required();
    unr->add_option("K", file_a)->required();
    unr->callback([&] { text_action = [&] { out << render_forest(unravel(load_structure(file_a), k).forest); }; });
    std::string eq_mode = "graded";
    auto* meq = app.add_subcommand("modal-eq", "Modal equivalence of pointed Kripke structures up to depth k nodes");
    meq->add_option("--k", k, "Walk length in nodes (modal depth k - 1)")->required();
    meq->add_option("--mode", eq_mode)->check(CLI::IsMember({"plain", "graded"}));
    meq->add_option("--size-bound", size_bound, "Size bound for separating formulas");
    meq->add_option("K1", file_a)->required();
    meq->add_option("K2", file_b)->required();
    meq->callback([&] {
        action = [&] {
            const auto a = load_structure(file_a), b = load_structure(file_b);
            if (k == 0)
                throw PreconditionError("--k must be at least 1");
            json j;
            if (eq_mode == "graded") {
                const bool eq = graded_equivalence(a, b, k);
                j["verdict"] = eq;
                auto phi = eq ? std::nullopt : graded_distinguisher(a, b, k - 1);
                j["witness"] = phi ? json(to_sexpr(**phi)) : json(nullptr);
            } else {
                const bool eq = solve_modal_game(a, b, k - 1, GameMode::full).duplicator_wins();
                j["verdict"] = eq;
                std::optional<ModalPtr> phi;
                if (!eq)
                    phi = ModalEnumerator({&a, &b}, k - 1, size_bound, 1).separator(0, 1);
                j["witness"] = phi ? json(to_sexpr(**phi)) : json(nullptr);
            }
            return j;
        };
    });
    std::string comonad = "ef";
    std::optional<std::size_t> max_k;
    auto* coalg = app.add_subcommand("coalg-number", "Least k admitting a coalgebra");
    coalg->add_option("--comonad", comonad)->check(CLI::IsMember({"ef", "pebble"}));
    coalg->add_option("--max-k", max_k, "Search bound (default: universe size)");
    coalg->add_option("A", file_a)->required();
    coalg->callback([&] {
        action = [&] {
            const auto a = load_structure(file_a);
            const auto bound = max_k.value_or(std::max<std::size_t>(a.size(), 1));
            const auto c = comonad == "ef" ? ef_coalgebra_number(a, bound) : pebble_coalgebra_number(a, bound);
            json j;
            j["value"] = c.value ? json(*c.value) : json(nullptr);
            if (!c.value)
                j["exceeds"] = c.max_k;
            j["witness"] = c.witness ? json(render_forest(*c.witness)) : json(nullptr);
            return j;
        };
    });

    // parameters
    auto* td = app.add_subcommand("treedepth", "Tree-depth of the Gaifman graph");
    td->add_option("A", file_a)->required();
    td->callback([&] { text_action = [&] { out << tree_depth(load_structure(file_a)) << "\n"; }; });
    auto* tw = app.add_subcommand("treewidth", "Treewidth of the Gaifman graph");
    tw->add_option("A", file_a)->required();
    tw->callback([&] { text_action = [&] { out << treewidth(load_structure(file_a)) << "\n"; }; });

    // hom counting
    std::size_t max_size = 0;
    std::string family = "auto";
    auto* lov = app.add_subcommand("lovasz", "Distinguish by homomorphism counts");
    lov->add_option("--max-size", max_size)->required();
    lov->add_option("--family", family)->check(CLI::IsMember({"auto", "graphs", "structures"}));
    lov->add_option("A", file_a)->required();
    lov->add_option("B", file_b)->required();
    lov->callback([&] {
        action = [&] {
            const auto a = load_structure(file_a), b = load_structure(file_b);
            const auto fam = family == "graphs" ? TestFamily::graphs
                             : family == "structures" ? TestFamily::structures
                                                      : TestFamily::automatic;
            const auto r = lovasz_test(a, b, max_size, fam);
            json j;
            j["verdict"] = r.distinguished ? "distinguished" : "indistinguishable";
            j["witness"] = r.witness ? json(render_structure(*r.witness)) : json(nullptr);
            if (r.distinguished)
                j["counts"] = json::array({r.count_a, r.count_b});
            j["tested"] = r.tested;
            return j;
        };
    });
    auto* prof = app.add_subcommand("profile", "Hom counts from structures of tree-depth <= k");
    prof->add_option("--k", k)->required();
    prof->add_option("--max-size", max_size)->required();
    prof->add_option("A", file_a)->required();
    prof->callback([&] {
        action = [&] {
            const auto p = bounded_td_profile(load_structure(file_a), k, max_size);
            json entries = json::array();
            for (const auto& e : p.entries)
                entries.push_back({{"test", render_structure(e.test)}, {"count", e.count}});
            json j;
            j["value"] = entries;
            return j;
        };
    });

    // evaluation
    std::string formula;
    bool modal_formula = false;
    std::vector<std::string> assigns;
    auto* ev = app.add_subcommand("eval", "Evaluate a formula (s-expression) in a structure");
    ev->add_option("--formula", formula)->required();
    ev->add_flag("--modal", modal_formula, "Modal formula, evaluated at the point");
    ev->add_option("--assign", assigns, "Free variable assignment var=element");
    ev->add_option("A", file_a)->required();
    ev->callback([&] {
        action = [&] {
            const auto a = load_structure(file_a);
            json j;
            if (modal_formula) {
                j["verdict"] = eval_modal(*parse_modal_formula(formula), a);
                return j;
            }
            Assignment g;
            for (const auto& s : assigns) {
                auto eq = s.find('=');
                if (eq == std::string::npos)
                    throw PreconditionError("assignment '" + s + "' is not var=element");
                auto e = a.find(s.substr(eq + 1));
                if (!e)
                    throw PreconditionError("unknown element '" + s.substr(eq + 1) + "'");
                g[s.substr(0, eq)] = *e;
            }
            const auto phi = parse_formula(formula);
            j["verdict"] = eval_fo(*phi, a, g);
            j["rank"] = quantifier_rank(*phi);
            return j;
        };
    });

    // audit
    std::vector<int> only;
    auto* aud = app.add_subcommand("audit", "Run the acceptance suite");
    aud->add_option("--only", only, "Criterion numbers to run");
    aud->callback([&] {
        text_action = [&] {
            AuditOptions opt;
            opt.seed = g.seed;
            if (!only.empty())
                opt.only = std::set<int>(only.begin(), only.end());
            bool all = true;
            run_audit(opt, [&](const CriterionResult& r) {
                json j;
                j["criterion"] = r.id;
                j["title"] = r.title;
                j["verdict"] = r.passed;
                j["detail"] = r.detail;
                if (g.timing)
                    j["timing_ms"] = r.seconds * 1000;
                out << j.dump(g.pretty ? 2 : -1) << "\n" << std::flush;
                all = all && r.passed;
            });
            exit_code = all ? 0 : 1;
        };
    });

    try {
        std::vector<std::string> args(argv.rbegin(), argv.rend());
        if (!args.empty())
            args.pop_back(); // program name
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    }

    if (g.jobs > 0)
        omp_set_num_threads(g.jobs);
    try {
        const auto start = std::chrono::steady_clock::now();
        if (action) {
            json j = action();
            emit(std::move(j), std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count());
        } else if (text_action) {
            text_action();
        }
        return exit_code;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const PreconditionError& e) {
        err << "precondition violated: " << e.what() << "\n";
        return 3;
    } catch (const InvariantError& e) {
        err << "internal invariant failed: " << e.what() << "\n";
        return 4;
    }
}

} // namespace gc::cli
