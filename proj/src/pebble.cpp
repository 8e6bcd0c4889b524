#include "gc/pebble.hpp"

#include "forest_search.hpp"
#include "gc/errors.hpp"

#include <algorithm>

namespace gc {

namespace {

std::string move_name(const Structure& a, const PebbleSequence& s)
{
    std::string out = "[";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i)
            out += ",";
        out += std::to_string(s[i].pebble) + ":" + a.name(s[i].element);
    }
    return out + "]";
}

// Lifted tuples are chains of prefixes of u, given by their lengths.
bool suffix_condition(const PebbleSequence& u, const std::vector<std::size_t>& lengths)
{
    for (auto li : lengths)
        for (auto lj : lengths) {
            if (li >= lj)
                continue;
            const auto p = u[li - 1].pebble;
            for (std::size_t x = li; x < lj; ++x)
                if (u[x].pebble == p)
                    return false;
        }
    return true;
}

// Conflict graph of the no-reuse condition: a conflicts with every x in (a, b] when a < b
// are adjacent.
std::vector<std::vector<bool>> conflicts(const Structure& a, const std::vector<std::optional<Element>>& parent)
{
    const auto n = a.size();
    ForestStructure f(a);
    f.parent = parent;
    std::vector<std::vector<bool>> c(n, std::vector<bool>(n, false));
    for (auto [u, v] : gaifman_graph(a).edges) {
        Element lo = u, hi = v;
        if (is_ancestor_or_self(f, hi, lo))
            std::swap(lo, hi);
        if (!is_ancestor_or_self(f, lo, hi))
            continue;
        for (Element x = hi; x != lo; x = *parent[x])
            c[lo][x] = c[x][lo] = true;
    }
    return c;
}

bool colour(const std::vector<std::vector<bool>>& c, std::size_t k, std::vector<std::size_t>& col, Element i)
{
    if (i == col.size())
        return true;
    for (std::size_t p = 1; p <= k; ++p) {
        bool ok = true;
        for (Element j = 0; j < i && ok; ++j)
            ok = !(c[i][j] && col[j] == p);
        if (!ok)
            continue;
        col[i] = p;
        if (colour(c, k, col, i + 1))
            return true;
    }
    col[i] = 0;
    return false;
}

} // namespace

PebbleCover build_pebble_truncated(const Structure& a, std::size_t k, std::size_t length)
{
    if (k == 0 || length == 0)
        throw PreconditionError("the pebble cover needs k >= 1 and length >= 1");
    const auto n = a.size();
    const auto moves = k * n;
    const auto limit = materialization_limit();
    std::size_t total = 0, layer = 1;
    for (std::size_t i = 1; i <= length && moves > 0; ++i) {
        if (layer > limit / moves + 1)
            throw PreconditionError("pebble cover exceeds GC_MAX_UNIVERSE=" + std::to_string(limit));
        layer *= moves;
        total += layer;
        if (total > limit)
            throw PreconditionError("pebble cover exceeds GC_MAX_UNIVERSE=" + std::to_string(limit));
    }

    PebbleCover cover;
    cover.pebbles = k;
    cover.length = length;
    Structure s(a.vocabulary());
    std::vector<PebbleSequence> frontier{{}};
    std::vector<std::size_t> pebble;
    for (std::size_t len = 1; len <= length && moves > 0; ++len) {
        std::vector<PebbleSequence> next;
        next.reserve(frontier.size() * moves);
        for (const auto& p : frontier)
            for (std::size_t q = 1; q <= k; ++q)
                for (Element e = 0; e < n; ++e) {
                    auto t = p;
                    t.push_back({q, e});
                    next.push_back(std::move(t));
                }
        for (const auto& t : next) {
            auto id = s.add_element(move_name(a, t));
            cover.index.emplace(t, id);
            cover.sequences.push_back(t);
            pebble.push_back(t.back().pebble);
        }
        frontier = std::move(next);
    }

    for (std::size_t sym = 0; sym < a.vocabulary().size(); ++sym) {
        const auto arity = a.vocabulary()[sym].arity;
        for (Element top = 0; top < cover.sequences.size(); ++top) {
            const auto& u = cover.sequences[top];
            std::vector<std::vector<std::size_t>> ends(n);
            for (std::size_t len = 1; len <= u.size(); ++len)
                ends[u[len - 1].element].push_back(len);
            for (const auto& t : a.table(sym)) {
                if (std::any_of(t.begin(), t.end(), [&](Element e) { return ends[e].empty(); }))
                    continue;
                std::vector<std::size_t> choice(arity, 0);
                while (true) {
                    std::vector<std::size_t> lengths(arity);
                    for (std::size_t i = 0; i < arity; ++i)
                        lengths[i] = ends[t[i]][choice[i]];
                    if (std::find(lengths.begin(), lengths.end(), u.size()) != lengths.end() &&
                        suffix_condition(u, lengths)) {
                        Tuple lifted;
                        for (auto l : lengths)
                            lifted.push_back(
                                cover.index.at(PebbleSequence(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(l))));
                        s.add_tuple(sym, std::move(lifted));
                    }
                    std::size_t i = arity;
                    while (i > 0 && ++choice[i - 1] == ends[t[i - 1]].size())
                        choice[--i] = 0;
                    if (i == 0)
                        break;
                }
            }
        }
    }

    cover.forest = ForestStructure(std::move(s));
    for (Element x = 0; x < cover.sequences.size(); ++x) {
        const auto& q = cover.sequences[x];
        if (q.size() > 1)
            cover.forest.parent[x] = cover.index.at(PebbleSequence(q.begin(), q.end() - 1));
    }
    cover.forest.pebble = std::move(pebble);
    cover.forest.pebble_bound = k;
    return cover;
}

std::optional<std::vector<std::size_t>> pebbling_for(const Structure& a, const std::vector<std::optional<Element>>& parent,
                                                     std::size_t k)
{
    const auto c = conflicts(a, parent);
    std::vector<std::size_t> col(a.size(), 0);
    if (!colour(c, k, col, 0))
        return std::nullopt;
    return col;
}

CoalgebraNumber pebble_coalgebra_number(const Structure& a, std::size_t max_k)
{
    CoalgebraNumber result;
    result.max_k = max_k;
    const auto n = a.size();
    if (n == 0) {
        if (max_k >= 1) {
            ForestStructure w(a);
            w.pebble = std::vector<std::size_t>{};
            w.pebble_bound = 1;
            result.value = 1;
            result.witness = std::move(w);
        }
        return result;
    }
    const auto choices = detail::parent_choices(n, 0);
    for (std::size_t k = 1; k <= max_k; ++k) {
        struct Hit {
            detail::ParentVector parent;
            std::vector<std::size_t> pebbling;
        };
        std::vector<std::optional<Hit>> found(choices.size());
        const auto m = static_cast<long>(choices.size());
#pragma omp parallel for schedule(dynamic)
        for (long c = 0; c < m; ++c)
            detail::forest_orders_from(a, std::nullopt, choices[static_cast<std::size_t>(c)],
                                       [&](const detail::ParentVector& p) {
                                           auto peb = pebbling_for(a, p, k);
                                           if (!peb)
                                               return true;
                                           found[static_cast<std::size_t>(c)] = Hit{p, std::move(*peb)};
                                           return false;
                                       });
        auto hit = std::find_if(found.begin(), found.end(), [](const auto& f) { return f.has_value(); });
        if (hit == found.end())
            continue;
        ForestStructure w(a);
        w.parent = (*hit)->parent;
        w.pebble = (*hit)->pebbling;
        w.pebble_bound = k;
        if (!validate_forest_structure(w).valid())
            throw InvariantError("pebble forest found by the coalgebra search is invalid");
        result.value = k;
        result.witness = std::move(w);
        return result;
    }
    return result;
}

} // namespace gc
