#include "gc/parameters.hpp"

#include "gc/errors.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <vector>

namespace gc {

namespace {

using Mask = std::uint32_t;

constexpr std::size_t max_vertices = 24;

std::vector<Mask> neighbour_masks(const Graph& g)
{
    if (g.vertex_count == 0)
        throw PreconditionError("graph parameters need a non-empty universe");
    if (g.vertex_count > max_vertices)
        throw PreconditionError("exact graph parameters support at most " + std::to_string(max_vertices) + " vertices");
    std::vector<Mask> nb(g.vertex_count, 0);
    for (const auto& [u, v] : g.edges) {
        nb[u] |= Mask{1} << v;
        nb[v] |= Mask{1} << u;
    }
    return nb;
}

// Connected component of `start` inside `within`.
Mask component(const std::vector<Mask>& nb, Mask within, unsigned start)
{
    Mask comp = Mask{1} << start, frontier = comp;
    while (frontier) {
        Mask next = 0;
        for (Mask f = frontier; f; f &= f - 1)
            next |= nb[static_cast<unsigned>(std::countr_zero(f))];
        next &= within & ~comp;
        comp |= next;
        frontier = next;
    }
    return comp;
}

class TreeDepth {
public:
    explicit TreeDepth(const std::vector<Mask>& nb) : nb_(nb), memo_(std::size_t{1} << nb.size(), 0) {}

    std::uint8_t of(Mask s)
    {
        if (!s)
            return 0;
        if (memo_[s])
            return memo_[s];
        std::uint8_t best = 0;
        const Mask first = component(nb_, s, static_cast<unsigned>(std::countr_zero(s)));
        if (first != s) {
            for (Mask rest = s; rest;) {
                const Mask c = component(nb_, rest, static_cast<unsigned>(std::countr_zero(rest)));
                best = std::max(best, of(c));
                rest &= ~c;
            }
        } else {
            best = std::numeric_limits<std::uint8_t>::max();
            for (Mask v = s; v; v &= v - 1) {
                const Mask without = s & ~(v & -v);
                best = std::min<std::uint8_t>(best, static_cast<std::uint8_t>(1 + of(without)));
                if (best == 1)
                    break;
            }
        }
        memo_[s] = best;
        return best;
    }

private:
    const std::vector<Mask>& nb_;
    std::vector<std::uint8_t> memo_;
};

} // namespace

std::size_t tree_depth(const Graph& g)
{
    const auto nb = neighbour_masks(g);
    TreeDepth td(nb);
    const Mask all = g.vertex_count == 32 ? ~Mask{0} : (Mask{1} << g.vertex_count) - 1;
    return td.of(all);
}

std::size_t tree_depth(const Structure& a) { return tree_depth(gaifman_graph(a)); }

std::size_t treewidth(const Graph& g)
{
    const auto nb = neighbour_masks(g);
    const auto n = g.vertex_count;
    const Mask all = (Mask{1} << n) - 1;
    // |Q(S, v)|: vertices outside S + v adjacent to the component of v in S + v
    auto q = [&](Mask s, unsigned v) {
        const Mask reach = component(nb, s | (Mask{1} << v), v);
        Mask out = 0;
        for (Mask r = reach; r; r &= r - 1)
            out |= nb[static_cast<unsigned>(std::countr_zero(r))];
        out &= ~(s | (Mask{1} << v));
        return static_cast<unsigned>(std::popcount(out));
    };
    std::vector<std::uint8_t> tw(std::size_t{1} << n, std::numeric_limits<std::uint8_t>::max());
    // TW(empty) is minus infinity; a single eliminated vertex costs |Q(empty, v)|
    for (Mask s = 1; s <= all; ++s) {
        unsigned best = std::numeric_limits<unsigned>::max();
        for (Mask m = s; m; m &= m - 1) {
            const auto v = static_cast<unsigned>(std::countr_zero(m));
            const Mask rest = s & ~(Mask{1} << v);
            const unsigned prior = rest ? tw[rest] : 0;
            best = std::min(best, std::max(prior, q(rest, v)));
        }
        tw[s] = static_cast<std::uint8_t>(best);
        if (s == all)
            break;
    }
    return tw[all];
}

std::size_t treewidth(const Structure& a) { return treewidth(gaifman_graph(a)); }

} // namespace gc
