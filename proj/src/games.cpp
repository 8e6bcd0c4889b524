#include "gc/games.hpp"

#include "gc/errors.hpp"
#include "gc/modal.hpp"
#include "matching.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace gc {

std::string to_string(Winner w) { return w == Winner::spoiler ? "Spoiler" : "Duplicator"; }

std::string to_string(GameMode m)
{
    switch (m) {
    case GameMode::ep:
        return "ep";
    case GameMode::full:
        return "full";
    case GameMode::count:
        return "count";
    }
    return "?";
}

std::optional<GameMode> parse_game_mode(std::string_view s)
{
    if (s == "ep")
        return GameMode::ep;
    if (s == "full")
        return GameMode::full;
    if (s == "count")
        return GameMode::count;
    return std::nullopt;
}

namespace {

PartialMode partial_mode(GameMode m) { return m == GameMode::ep ? PartialMode::hom : PartialMode::iso; }

Position as_position(const std::vector<Pair>& history)
{
    Position p;
    for (const auto& pr : history)
        p.emplace_back(pr);
    return p;
}

std::vector<Pair> pairs_of(const Position& p)
{
    std::vector<Pair> out;
    for (const auto& s : p)
        if (s)
            out.push_back(*s);
    return out;
}

// ---------------------------------------------------------------------------------------
// EF games

class EFSolver {
public:
    EFSolver(const Structure& a, const Structure& b, GameMode mode) : a_(a), b_(b), mode_(mode) {}

    bool wins(const std::vector<Pair>& pos, std::size_t r)
    {
        auto key = std::make_pair(pos, r);
        if (auto it = memo_.find(key); it != memo_.end())
            return it->second;
        bool w = evaluate(pos, r);
        memo_.emplace(std::move(key), w);
        return w;
    }

    static std::vector<Pair> extend(const std::vector<Pair>& pos, Pair p)
    {
        auto out = pos;
        auto it = std::lower_bound(out.begin(), out.end(), p);
        if (it == out.end() || *it != p)
            out.insert(it, p);
        return out;
    }

    std::optional<Element> answer(const std::vector<Pair>& pos, std::size_t r, Side side, Element e)
    {
        const auto& other = side == Side::left ? b_ : a_;
        for (Element x = 0; x < other.size(); ++x) {
            Pair p = side == Side::left ? Pair{e, x} : Pair{x, e};
            if (wins(extend(pos, p), r - 1))
                return x;
        }
        return std::nullopt;
    }

    std::optional<std::vector<Element>> bijection(const std::vector<Pair>& pos, std::size_t r)
    {
        if (a_.size() != b_.size())
            return std::nullopt;
        const auto n = a_.size();
        std::vector<std::vector<bool>> ok(n, std::vector<bool>(n, false));
        for (Element x = 0; x < n; ++x)
            for (Element y = 0; y < n; ++y)
                ok[x][y] = wins(extend(pos, {x, y}), r - 1);
        return detail::perfect_matching(ok);
    }

private:
    bool evaluate(const std::vector<Pair>& pos, std::size_t r)
    {
        if (!check_partial_map(pos, a_, b_, partial_mode(mode_)))
            return false;
        if (r == 0)
            return true;
        if (mode_ == GameMode::count)
            return bijection(pos, r).has_value();
        for (Element x = 0; x < a_.size(); ++x)
            if (!answer(pos, r, Side::left, x))
                return false;
        if (mode_ == GameMode::full)
            for (Element y = 0; y < b_.size(); ++y)
                if (!answer(pos, r, Side::right, y))
                    return false;
        return true;
    }

    const Structure& a_;
    const Structure& b_;
    GameMode mode_;
    std::map<std::pair<std::vector<Pair>, std::size_t>, bool> memo_;
};

void ef_strategy(EFSolver& solver, const Structure& a, const Structure& b, GameMode mode, std::vector<Pair>& history,
                 std::size_t r, std::vector<StrategyEntry>& out)
{
    if (r == 0)
        return;
    std::vector<Pair> set = history;
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());

    if (mode == GameMode::count) {
        auto f = solver.bijection(set, r);
        if (!f)
            throw InvariantError("EF strategy extraction reached a losing position");
        StrategyEntry e;
        e.position = as_position(history);
        e.rounds_left = r;
        e.bijection = *f;
        out.push_back(e);
        for (Element x = 0; x < a.size(); ++x) {
            history.emplace_back(x, (*f)[x]);
            ef_strategy(solver, a, b, mode, history, r - 1, out);
            history.pop_back();
        }
        return;
    }

    auto play = [&](Side side, Element e) {
        auto resp = solver.answer(set, r, side, e);
        if (!resp)
            throw InvariantError("EF strategy extraction reached a losing position");
        StrategyEntry entry;
        entry.position = as_position(history);
        entry.rounds_left = r;
        entry.move = {side, 0, 0, e};
        entry.response = *resp;
        out.push_back(entry);
        history.push_back(side == Side::left ? Pair{e, *resp} : Pair{*resp, e});
        ef_strategy(solver, a, b, mode, history, r - 1, out);
        history.pop_back();
    };
    for (Element x = 0; x < a.size(); ++x)
        play(Side::left, x);
    if (mode == GameMode::full)
        for (Element y = 0; y < b.size(); ++y)
            play(Side::right, y);
}

// ---------------------------------------------------------------------------------------
// Pebble games

class PebbleArena {
public:
    PebbleArena(const Structure& a, const Structure& b, std::size_t k, GameMode mode)
        : a_(a), b_(b), k_(k), mode_(mode), na_(a.size()), nb_(b.size()), base_(na_ * nb_ + 1)
    {
        std::uint64_t total = 1;
        for (std::size_t i = 0; i < k; ++i) {
            total *= base_;
            if (total > (std::uint64_t{1} << 26))
                throw PreconditionError("pebble game arena too large (" + std::to_string(k) + " pebbles on " +
                                        std::to_string(na_) + " x " + std::to_string(nb_) + " elements)");
        }
        total_ = total;
        stride_.resize(k);
        std::uint64_t s = 1;
        for (std::size_t i = 0; i < k; ++i) {
            stride_[i] = s;
            s *= base_;
        }
    }

    std::uint64_t size() const { return total_; }

    std::size_t slot_value(std::uint64_t code, std::size_t i) const { return (code / stride_[i]) % base_; }
    std::uint64_t with_slot(std::uint64_t code, std::size_t i, std::size_t v) const
    {
        return code + (static_cast<std::int64_t>(v) - static_cast<std::int64_t>(slot_value(code, i))) *
                          static_cast<std::int64_t>(stride_[i]);
    }
    std::size_t encode(Element x, Element y) const { return 1 + x * nb_ + y; }

    Position decode(std::uint64_t code) const
    {
        Position p(k_);
        for (std::size_t i = 0; i < k_; ++i) {
            auto v = slot_value(code, i);
            if (v)
                p[i] = Pair{static_cast<Element>((v - 1) / nb_), static_cast<Element>((v - 1) % nb_)};
        }
        return p;
    }

    bool condition(std::uint64_t code) const
    {
        return check_partial_map(pairs_of(decode(code)), a_, b_, partial_mode(mode_));
    }

    template <class Alive>
    bool survives(std::uint64_t code, const Alive& alive) const
    {
        for (std::size_t i = 0; i < k_; ++i)
            if (!survives_slot(code, i, alive))
                return false;
        return true;
    }

    template <class Alive>
    bool survives_slot(std::uint64_t code, std::size_t i, const Alive& alive) const
    {
        if (mode_ == GameMode::count)
            return bijection(code, i, alive).has_value();
        for (Element x = 0; x < na_; ++x)
            if (!answer(code, i, Side::left, x, alive))
                return false;
        if (mode_ == GameMode::full)
            for (Element y = 0; y < nb_; ++y)
                if (!answer(code, i, Side::right, y, alive))
                    return false;
        return true;
    }

    template <class Alive>
    std::optional<Element> answer(std::uint64_t code, std::size_t i, Side side, Element e, const Alive& alive) const
    {
        const auto n = side == Side::left ? nb_ : na_;
        for (Element z = 0; z < n; ++z) {
            auto v = side == Side::left ? encode(e, z) : encode(z, e);
            if (alive[with_slot(code, i, v)])
                return z;
        }
        return std::nullopt;
    }

    template <class Alive>
    std::optional<std::vector<Element>> bijection(std::uint64_t code, std::size_t i, const Alive& alive) const
    {
        if (na_ != nb_)
            return std::nullopt;
        std::vector<std::vector<bool>> ok(na_, std::vector<bool>(nb_, false));
        for (Element x = 0; x < na_; ++x)
            for (Element y = 0; y < nb_; ++y)
                ok[x][y] = alive[with_slot(code, i, encode(x, y))];
        return detail::perfect_matching(ok);
    }

    std::size_t pebbles() const { return k_; }
    GameMode mode() const { return mode_; }
    std::size_t left_size() const { return na_; }
    std::size_t right_size() const { return nb_; }

private:
    const Structure& a_;
    const Structure& b_;
    std::size_t k_;
    GameMode mode_;
    std::size_t na_, nb_;
    std::size_t base_;
    std::uint64_t total_ = 0;
    std::vector<std::uint64_t> stride_;
};

void pebble_fixpoint_serial(const PebbleArena& arena, std::vector<char>& alive)
{
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::uint64_t p = 0; p < arena.size(); ++p)
            if (alive[p] && !arena.survives(p, alive)) {
                alive[p] = 0;
                changed = true;
            }
    }
}

// One synchronous sweep; returns whether anything was removed.
bool pebble_sweep_parallel(const PebbleArena& arena, std::vector<char>& alive)
{
    std::vector<char> next(alive.size());
    const auto n = static_cast<long long>(arena.size());
    long long removed = 0;
#pragma omp parallel for schedule(static) reduction(+ : removed)
    for (long long p = 0; p < n; ++p) {
        const auto q = static_cast<std::uint64_t>(p);
        next[q] = alive[q] && arena.survives(q, alive);
        removed += alive[q] && !next[q];
    }
    alive.swap(next);
    return removed > 0;
}

std::vector<StrategyEntry> pebble_strategy(const PebbleArena& arena, const std::vector<char>& alive)
{
    std::vector<StrategyEntry> out;
    std::set<std::uint64_t> seen{0};
    std::vector<std::uint64_t> queue{0};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        const auto code = queue[qi];
        const auto pos = arena.decode(code);
        auto visit = [&](std::uint64_t next) {
            if (seen.insert(next).second)
                queue.push_back(next);
        };
        for (std::size_t i = 0; i < arena.pebbles(); ++i) {
            if (arena.mode() == GameMode::count) {
                auto f = arena.bijection(code, i, alive);
                if (!f)
                    throw InvariantError("pebble strategy reached a losing position");
                StrategyEntry e;
                e.position = pos;
                e.move.slot = i;
                e.bijection = *f;
                out.push_back(e);
                for (Element x = 0; x < arena.left_size(); ++x)
                    visit(arena.with_slot(code, i, arena.encode(x, (*f)[x])));
                continue;
            }
            auto play = [&](Side side, Element el) {
                auto r = arena.answer(code, i, side, el, alive);
                if (!r)
                    throw InvariantError("pebble strategy reached a losing position");
                StrategyEntry e;
                e.position = pos;
                e.move = {side, i, 0, el};
                e.response = *r;
                out.push_back(e);
                visit(arena.with_slot(code, i, side == Side::left ? arena.encode(el, *r) : arena.encode(*r, el)));
            };
            for (Element x = 0; x < arena.left_size(); ++x)
                play(Side::left, x);
            if (arena.mode() == GameMode::full)
                for (Element y = 0; y < arena.right_size(); ++y)
                    play(Side::right, y);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------------------
// Modal games

class ModalSolver {
public:
    ModalSolver(const Structure& k1, const Structure& k2, GameMode mode) : k1_(k1), k2_(k2), mode_(mode)
    {
        const auto& v = k1.vocabulary();
        for (std::size_t r = 0; r < v.size(); ++r)
            (v[r].arity == 1 ? props_ : transitions_).push_back(r);
    }

    bool condition(Element s, Element t) const
    {
        for (auto p : props_) {
            bool l = k1_.holds(p, {s}), r = k2_.holds(p, {t});
            if (mode_ == GameMode::ep ? (l && !r) : (l != r))
                return false;
        }
        return true;
    }

    bool wins(Element s, Element t, std::size_t r)
    {
        auto key = std::make_tuple(s, t, r);
        if (auto it = memo_.find(key); it != memo_.end())
            return it->second;
        bool w = evaluate(s, t, r);
        memo_.emplace(key, w);
        return w;
    }

    std::optional<Element> answer(Element s, Element t, std::size_t r, std::size_t rel, Side side, Element e)
    {
        if (side == Side::left) {
            for (auto y : successors(k2_, rel, t))
                if (wins(e, y, r - 1))
                    return y;
        } else {
            for (auto x : successors(k1_, rel, s))
                if (wins(x, e, r - 1))
                    return x;
        }
        return std::nullopt;
    }

    std::optional<std::vector<Element>> bijection(Element s, Element t, std::size_t r, std::size_t rel)
    {
        auto left = successors(k1_, rel, s);
        auto right = successors(k2_, rel, t);
        if (left.size() != right.size())
            return std::nullopt;
        std::vector<std::vector<bool>> ok(left.size(), std::vector<bool>(right.size(), false));
        for (std::size_t i = 0; i < left.size(); ++i)
            for (std::size_t j = 0; j < right.size(); ++j)
                ok[i][j] = wins(left[i], right[j], r - 1);
        auto m = detail::perfect_matching(ok);
        if (!m)
            return std::nullopt;
        std::vector<Element> out;
        for (auto j : *m)
            out.push_back(right[j]);
        return out;
    }

    const std::vector<std::size_t>& transitions() const { return transitions_; }
    GameMode mode() const { return mode_; }

private:
    bool evaluate(Element s, Element t, std::size_t r)
    {
        if (!condition(s, t))
            return false;
        if (r == 0)
            return true;
        for (auto rel : transitions_) {
            if (mode_ == GameMode::count) {
                if (!bijection(s, t, r, rel))
                    return false;
                continue;
            }
            for (auto x : successors(k1_, rel, s))
                if (!answer(s, t, r, rel, Side::left, x))
                    return false;
            if (mode_ == GameMode::full)
                for (auto y : successors(k2_, rel, t))
                    if (!answer(s, t, r, rel, Side::right, y))
                        return false;
        }
        return true;
    }

    const Structure& k1_;
    const Structure& k2_;
    GameMode mode_;
    std::vector<std::size_t> props_, transitions_;
    std::map<std::tuple<Element, Element, std::size_t>, bool> memo_;
};

void modal_strategy(ModalSolver& solver, const Structure& k1, const Structure& k2, Element s, Element t,
                    std::size_t r, std::vector<StrategyEntry>& out, std::set<std::tuple<Element, Element, std::size_t>>& done)
{
    if (r == 0 || !done.insert({s, t, r}).second)
        return;
    const Position pos{Pair{s, t}};
    for (auto rel : solver.transitions()) {
        if (solver.mode() == GameMode::count) {
            auto f = solver.bijection(s, t, r, rel);
            if (!f)
                throw InvariantError("modal strategy reached a losing position");
            StrategyEntry e;
            e.position = pos;
            e.rounds_left = r;
            e.move.relation = rel;
            e.bijection = *f;
            out.push_back(e);
            auto left = successors(k1, rel, s);
            for (std::size_t i = 0; i < left.size(); ++i)
                modal_strategy(solver, k1, k2, left[i], (*f)[i], r - 1, out, done);
            continue;
        }
        auto play = [&](Side side, Element el) {
            auto resp = solver.answer(s, t, r, rel, side, el);
            if (!resp)
                throw InvariantError("modal strategy reached a losing position");
            StrategyEntry e;
            e.position = pos;
            e.rounds_left = r;
            e.move = {side, 0, rel, el};
            e.response = *resp;
            out.push_back(e);
            if (side == Side::left)
                modal_strategy(solver, k1, k2, el, *resp, r - 1, out, done);
            else
                modal_strategy(solver, k1, k2, *resp, el, r - 1, out, done);
        };
        for (auto x : successors(k1, rel, s))
            play(Side::left, x);
        if (solver.mode() == GameMode::full)
            for (auto y : successors(k2, rel, t))
                play(Side::right, y);
    }
}

// ---------------------------------------------------------------------------------------
// Path game on forests

class PathGame {
public:
    PathGame(const ForestStructure& f1, const ForestStructure& f2)
        : f1_(f1), f2_(f2), l1_(local_labels(f1)), l2_(local_labels(f2)), c1_(children_of(f1)), c2_(children_of(f2)),
          r1_(roots_of(f1)), r2_(roots_of(f2))
    {
    }

    // nodes are optional: nullopt is the empty chain
    using Node = std::optional<Element>;

    const std::vector<Element>& kids(bool left, Node n) const
    {
        if (!n)
            return left ? r1_ : r2_;
        return left ? c1_[*n] : c2_[*n];
    }

    bool same_label(Element u, Element v) const { return l1_[u] == l2_[v]; }

    bool good(Node u, Node v)
    {
        auto key = std::make_pair(u, v);
        if (auto it = memo_.find(key); it != memo_.end())
            return it->second;
        bool g = true;
        for (auto x : kids(true, u))
            if (!answer(u, v, Side::left, x)) {
                g = false;
                break;
            }
        if (g)
            for (auto y : kids(false, v))
                if (!answer(u, v, Side::right, y)) {
                    g = false;
                    break;
                }
        memo_.emplace(key, g);
        return g;
    }

    std::optional<Element> answer(Node u, Node v, Side side, Element e)
    {
        if (side == Side::left) {
            for (auto y : kids(false, v))
                if (same_label(e, y) && good(e, y))
                    return y;
        } else {
            for (auto x : kids(true, u))
                if (same_label(x, e) && good(x, e))
                    return x;
        }
        return std::nullopt;
    }

    void strategy(Node u, Node v, std::vector<StrategyEntry>& out)
    {
        Position pos{u && v ? std::optional<Pair>(Pair{*u, *v}) : std::nullopt};
        auto play = [&](Side side, Element e) {
            auto r = answer(u, v, side, e);
            if (!r)
                throw InvariantError("path game strategy reached a losing position");
            StrategyEntry entry;
            entry.position = pos;
            entry.move = {side, 0, 0, e};
            entry.response = *r;
            out.push_back(entry);
            if (side == Side::left)
                strategy(e, *r, out);
            else
                strategy(*r, e, out);
        };
        for (auto x : kids(true, u))
            play(Side::left, x);
        for (auto y : kids(false, v))
            play(Side::right, y);
    }

private:
    const ForestStructure& f1_;
    const ForestStructure& f2_;
    std::vector<std::string> l1_, l2_;
    std::vector<std::vector<Element>> c1_, c2_;
    std::vector<Element> r1_, r2_;
    std::map<std::pair<Node, Node>, bool> memo_;
};

} // namespace

GameResult solve_ef_game(const Structure& a, const Structure& b, std::size_t k, GameMode mode)
{
    if (a.vocabulary() != b.vocabulary())
        throw PreconditionError("EF game between structures over different vocabularies");
    EFSolver solver(a, b, mode);
    GameResult r;
    r.kind = GameKind::ef;
    r.mode = mode;
    r.bound = k;
    r.winner = solver.wins({}, k) ? Winner::duplicator : Winner::spoiler;
    if (r.duplicator_wins()) {
        std::vector<Pair> history;
        ef_strategy(solver, a, b, mode, history, k, r.strategy);
    }
    return r;
}

GameResult solve_pebble_game(const Structure& a, const Structure& b, std::size_t k, GameMode mode,
                             const PebbleOptions& options)
{
    if (k == 0)
        throw PreconditionError("pebble games need k >= 1");
    if (a.vocabulary() != b.vocabulary())
        throw PreconditionError("pebble game between structures over different vocabularies");
    PebbleArena arena(a, b, k, mode);
    std::vector<char> alive(arena.size());
    const auto n = static_cast<long long>(arena.size());
#pragma omp parallel for schedule(static)
    for (long long p = 0; p < n; ++p)
        alive[static_cast<std::uint64_t>(p)] = arena.condition(static_cast<std::uint64_t>(p));

    if (options.rounds) {
        for (std::size_t i = 0; i < *options.rounds; ++i)
            if (!pebble_sweep_parallel(arena, alive))
                break;
    } else if (options.parallel) {
        while (pebble_sweep_parallel(arena, alive)) {
        }
    } else {
        pebble_fixpoint_serial(arena, alive);
    }

    GameResult r;
    r.kind = GameKind::pebble;
    r.mode = mode;
    r.bound = k;
    r.rounds = options.rounds;
    r.winner = alive[0] ? Winner::duplicator : Winner::spoiler;
    if (r.duplicator_wins() && options.with_strategy && !options.rounds)
        r.strategy = pebble_strategy(arena, alive);
    return r;
}

GameResult solve_modal_game(const Structure& k1, const Structure& k2, std::size_t rounds, GameMode mode)
{
    require_kripke(k1);
    require_kripke(k2);
    if (k1.vocabulary() != k2.vocabulary())
        throw PreconditionError("modal game between structures over different vocabularies");
    ModalSolver solver(k1, k2, mode);
    GameResult r;
    r.kind = GameKind::modal;
    r.mode = mode;
    r.bound = rounds;
    r.winner = solver.wins(*k1.point(), *k2.point(), rounds) ? Winner::duplicator : Winner::spoiler;
    if (r.duplicator_wins()) {
        std::set<std::tuple<Element, Element, std::size_t>> done;
        modal_strategy(solver, k1, k2, *k1.point(), *k2.point(), rounds, r.strategy, done);
    }
    return r;
}

GameResult solve_arboreal_game(const ForestStructure& f1, const ForestStructure& f2)
{
    require_valid(f1);
    require_valid(f2);
    if (f1.base.vocabulary() != f2.base.vocabulary())
        throw PreconditionError("path game between forests over different vocabularies");
    PathGame game(f1, f2);
    GameResult r;
    r.kind = GameKind::arboreal;
    r.mode = GameMode::full;
    r.bound = std::max(height_of(f1), height_of(f2));
    r.winner = game.good(std::nullopt, std::nullopt) ? Winner::duplicator : Winner::spoiler;
    if (r.duplicator_wins())
        game.strategy(std::nullopt, std::nullopt, r.strategy);
    return r;
}

ElementMap strategy_to_cokleisli(const GameResult& r, const Structure& a, const Structure& b, const EFCover& cover)
{
    if (r.kind != GameKind::ef || r.mode != GameMode::ep || !r.duplicator_wins())
        throw PreconditionError("coKleisli extraction needs a Duplicator win of the existential EF game");
    if (r.bound != cover.bound)
        throw PreconditionError("strategy bound differs from the cover bound");
    std::map<std::pair<Position, Element>, Element> table;
    for (const auto& e : r.strategy)
        table.emplace(std::make_pair(e.position, e.move.element), e.response);
    ElementMap f(cover.sequences.size());
    for (Element x = 0; x < cover.sequences.size(); ++x) {
        Position history;
        Element last = 0;
        for (auto el : cover.sequences[x]) {
            auto it = table.find({history, el});
            if (it == table.end())
                throw PreconditionError("strategy table does not cover every play");
            last = it->second;
            history.emplace_back(Pair{el, last});
        }
        f.set(x, last);
    }
    (void)a;
    (void)b;
    return f;
}

bool replay_strategy(const GameResult& r, const Structure& a, const Structure& b)
{
    if (!r.duplicator_wins())
        return false;
    std::map<std::tuple<Position, Side, std::size_t, Element, std::size_t>, const StrategyEntry*> table;
    for (const auto& e : r.strategy)
        table.emplace(std::make_tuple(e.position, e.move.side, e.move.relation, e.move.element, e.rounds_left), &e);
    auto lookup = [&](const Position& p, Side s, std::size_t rel, Element el, std::size_t rounds) -> const StrategyEntry* {
        auto it = table.find({p, s, rel, el, rounds});
        return it == table.end() ? nullptr : it->second;
    };

    if (r.kind == GameKind::ef) {
        const auto pm = partial_mode(r.mode);
        std::function<bool(Position&, std::size_t)> go = [&](Position& h, std::size_t left) -> bool {
            if (!check_partial_map(pairs_of(h), a, b, pm))
                return false;
            if (left == 0)
                return true;
            if (r.mode == GameMode::count) {
                const auto* e = lookup(h, Side::left, 0, 0, left);
                if (!e || e->bijection.size() != a.size() || a.size() != b.size())
                    return false;
                std::vector<bool> hit(b.size(), false);
                for (auto y : e->bijection) {
                    if (y >= b.size() || hit[y])
                        return false;
                    hit[y] = true;
                }
                const auto f = e->bijection;
                for (Element x = 0; x < a.size(); ++x) {
                    h.emplace_back(Pair{x, f[x]});
                    bool ok = go(h, left - 1);
                    h.pop_back();
                    if (!ok)
                        return false;
                }
                return true;
            }
            auto try_move = [&](Side s, Element el) {
                const auto* e = lookup(h, s, 0, el, left);
                if (!e)
                    return false;
                h.emplace_back(s == Side::left ? Pair{el, e->response} : Pair{e->response, el});
                bool ok = go(h, left - 1);
                h.pop_back();
                return ok;
            };
            for (Element x = 0; x < a.size(); ++x)
                if (!try_move(Side::left, x))
                    return false;
            if (r.mode == GameMode::full)
                for (Element y = 0; y < b.size(); ++y)
                    if (!try_move(Side::right, y))
                        return false;
            return true;
        };
        Position h;
        return go(h, r.bound);
    }

    if (r.kind == GameKind::modal) {
        ModalSolver cond(a, b, r.mode);
        std::function<bool(Element, Element, std::size_t)> go = [&](Element s, Element t, std::size_t left) -> bool {
            if (!cond.condition(s, t))
                return false;
            if (left == 0)
                return true;
            const Position pos{Pair{s, t}};
            for (auto rel : cond.transitions()) {
                auto ls = successors(a, rel, s);
                auto rs = successors(b, rel, t);
                if (r.mode == GameMode::count) {
                    const auto* e = lookup(pos, Side::left, rel, 0, left);
                    if (!e || e->bijection.size() != ls.size() || ls.size() != rs.size())
                        return false;
                    auto sorted = e->bijection;
                    std::sort(sorted.begin(), sorted.end());
                    if (sorted != rs)
                        return false;
                    for (std::size_t i = 0; i < ls.size(); ++i)
                        if (!go(ls[i], e->bijection[i], left - 1))
                            return false;
                    continue;
                }
                for (auto x : ls) {
                    const auto* e = lookup(pos, Side::left, rel, x, left);
                    if (!e || !std::binary_search(rs.begin(), rs.end(), e->response) || !go(x, e->response, left - 1))
                        return false;
                }
                if (r.mode == GameMode::full)
                    for (auto y : rs) {
                        const auto* e = lookup(pos, Side::right, rel, y, left);
                        if (!e || !std::binary_search(ls.begin(), ls.end(), e->response) ||
                            !go(e->response, y, left - 1))
                            return false;
                    }
            }
            return true;
        };
        return go(*a.point(), *b.point(), r.bound);
    }
    throw PreconditionError("replay_strategy supports EF and modal strategies");
}

bool strategy_closed(const GameResult& r, const Structure& a, const Structure& b)
{
    if (r.kind != GameKind::pebble || !r.duplicator_wins())
        return false;
    const auto pm = partial_mode(r.mode);
    std::set<Position> positions;
    for (const auto& e : r.strategy)
        positions.insert(e.position);
    const bool spoiler_can_move = r.mode == GameMode::count || a.size() > 0 || (r.mode == GameMode::full && b.size() > 0);
    if (r.strategy.empty())
        return !spoiler_can_move || (r.mode == GameMode::count && a.size() == 0 && b.size() == 0);
    for (const auto& e : r.strategy) {
        if (!check_partial_map(pairs_of(e.position), a, b, pm))
            return false;
        std::vector<Position> next;
        if (r.mode == GameMode::count) {
            if (e.bijection.size() != a.size() || a.size() != b.size())
                return false;
            for (Element x = 0; x < a.size(); ++x) {
                auto p = e.position;
                p[e.move.slot] = Pair{x, e.bijection[x]};
                next.push_back(std::move(p));
            }
        } else {
            auto p = e.position;
            p[e.move.slot] = e.move.side == Side::left ? Pair{e.move.element, e.response} : Pair{e.response, e.move.element};
            next.push_back(std::move(p));
        }
        for (const auto& p : next)
            if (!check_partial_map(pairs_of(p), a, b, pm) || !positions.contains(p))
                return false;
    }
    return true;
}

} // namespace gc
