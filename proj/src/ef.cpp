#include "gc/ef.hpp"

#include "forest_search.hpp"
#include "gc/errors.hpp"

#include <algorithm>
#include <cstdlib>

namespace gc {

std::size_t materialization_limit()
{
    if (const char* env = std::getenv("GC_MAX_UNIVERSE")) {
        char* end = nullptr;
        auto v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0)
            return static_cast<std::size_t>(v);
    }
    return 200000;
}

Element EFCover::element_of(const Sequence& s) const
{
    auto it = index.find(s);
    if (it == index.end())
        throw PreconditionError("sequence is not an element of the cover");
    return it->second;
}

bool is_prefix(const Sequence& s, const Sequence& t)
{
    return s.size() <= t.size() && std::equal(s.begin(), s.end(), t.begin());
}

std::vector<Sequence> comultiplication_of(const Sequence& s)
{
    std::vector<Sequence> out;
    for (std::size_t len = 1; len <= s.size(); ++len)
        out.emplace_back(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(len));
    return out;
}

namespace {

std::string sequence_name(const Structure& a, const Sequence& s)
{
    std::string out = "[";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i)
            out += ",";
        out += a.name(s[i]);
    }
    return out + "]";
}

} // namespace

EFCover build_ef(const Structure& a, std::size_t k)
{
    if (k == 0)
        throw PreconditionError("the EF cover needs k >= 1");
    const auto n = a.size();
    const auto limit = materialization_limit();
    std::size_t total = 0, layer = 1;
    for (std::size_t i = 1; i <= k && n > 0; ++i) {
        if (layer > limit / n + 1)
            throw PreconditionError("EF cover exceeds GC_MAX_UNIVERSE=" + std::to_string(limit));
        layer *= n;
        total += layer;
        if (total > limit)
            throw PreconditionError("EF cover of " + std::to_string(total) + "+ nodes exceeds GC_MAX_UNIVERSE=" +
                                    std::to_string(limit));
    }

    EFCover cover;
    cover.bound = k;
    Structure s(a.vocabulary());
    std::vector<Sequence> frontier{{}};
    for (std::size_t len = 1; len <= k && n > 0; ++len) {
        std::vector<Sequence> next;
        next.reserve(frontier.size() * n);
        for (const auto& p : frontier)
            for (Element e = 0; e < n; ++e) {
                auto q = p;
                q.push_back(e);
                next.push_back(std::move(q));
            }
        for (const auto& q : next) {
            auto id = s.add_element(sequence_name(a, q));
            cover.index.emplace(q, id);
            cover.sequences.push_back(q);
        }
        frontier = std::move(next);
    }

    // Tuples lying on a chain are tuples of prefixes of their longest member u.
    for (std::size_t sym = 0; sym < a.vocabulary().size(); ++sym) {
        const auto arity = a.vocabulary()[sym].arity;
        for (Element top = 0; top < cover.sequences.size(); ++top) {
            const auto& u = cover.sequences[top];
            std::vector<std::vector<Element>> ends(n);
            for (std::size_t len = 1; len <= u.size(); ++len)
                ends[u[len - 1]].push_back(
                    cover.index.at(Sequence(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(len))));
            for (const auto& t : a.table(sym)) {
                bool possible = true;
                bool reaches_top = false;
                for (auto e : t) {
                    possible = possible && !ends[e].empty();
                    reaches_top = reaches_top || e == u.back();
                }
                if (!possible || !reaches_top)
                    continue;
                std::vector<std::size_t> choice(arity, 0);
                while (true) {
                    Tuple lifted(arity);
                    bool has_top = false;
                    for (std::size_t i = 0; i < arity; ++i) {
                        lifted[i] = ends[t[i]][choice[i]];
                        has_top = has_top || lifted[i] == top;
                    }
                    if (has_top)
                        s.add_tuple(sym, std::move(lifted));
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
            cover.forest.parent[x] = cover.index.at(Sequence(q.begin(), q.end() - 1));
    }
    return cover;
}

ElementMap counit_map(const EFCover& cover)
{
    ElementMap m(cover.sequences.size());
    for (Element x = 0; x < cover.sequences.size(); ++x)
        m.set(x, counit_of(cover.sequences[x]));
    return m;
}

ElementMap cokleisli_extend(const ElementMap& f, const ForestStructure& t, const Structure& a, const EFCover& cover)
{
    require_valid(t);
    if (height_of(t) > cover.bound)
        throw PreconditionError("forest of height " + std::to_string(height_of(t)) + " exceeds k = " +
                                std::to_string(cover.bound));
    if (!check_map(f, t.base, a, MapMode::hom))
        throw PreconditionError("coKleisli extension needs a homomorphism");
    ElementMap out(t.size());
    for (Element x = 0; x < t.size(); ++x) {
        Sequence s;
        for (auto y : chain_to(t, x))
            s.push_back(f.at(y));
        out.set(x, cover.element_of(s));
    }
    return out;
}

bool check_coalgebra(const Coalgebra& c, const Structure& carrier)
{
    const auto n = carrier.size();
    if (c.map.size() != n || c.bound == 0)
        return false;
    for (Element a = 0; a < n; ++a) {
        const auto& s = c.map[a];
        if (s.empty() || s.size() > c.bound)
            return false;
        if (std::any_of(s.begin(), s.end(), [&](Element e) { return e >= n; }))
            return false;
        if (counit_of(s) != a)
            return false;
    }
    for (std::size_t sym = 0; sym < carrier.vocabulary().size(); ++sym)
        for (const auto& t : carrier.table(sym)) {
            Tuple last;
            for (std::size_t i = 0; i < t.size(); ++i) {
                for (std::size_t j = i + 1; j < t.size(); ++j) {
                    const auto& si = c.map[t[i]];
                    const auto& sj = c.map[t[j]];
                    if (!is_prefix(si, sj) && !is_prefix(sj, si))
                        return false;
                }
                last.push_back(counit_of(c.map[t[i]]));
            }
            if (!carrier.holds(sym, last))
                return false;
        }
    for (Element a = 0; a < n; ++a) {
        const auto delta = comultiplication_of(c.map[a]);
        std::vector<Sequence> mapped;
        for (auto e : c.map[a])
            mapped.push_back(c.map[e]);
        if (delta != mapped)
            return false;
    }
    return true;
}

Coalgebra coalgebra_from_forest(const ForestStructure& f, std::size_t bound)
{
    Coalgebra c;
    c.bound = bound;
    for (Element x = 0; x < f.size(); ++x)
        c.map.push_back(chain_to(f, x));
    return c;
}

std::optional<std::vector<std::optional<Element>>> forest_from_coalgebra(const Coalgebra& c)
{
    std::map<Sequence, Element> inverse;
    for (Element a = 0; a < c.map.size(); ++a)
        inverse.emplace(c.map[a], a);
    std::vector<std::optional<Element>> parent(c.map.size());
    for (Element a = 0; a < c.map.size(); ++a) {
        const auto& s = c.map[a];
        if (s.size() <= 1)
            continue;
        auto it = inverse.find(Sequence(s.begin(), s.end() - 1));
        if (it == inverse.end())
            return std::nullopt;
        parent[a] = it->second;
    }
    return parent;
}

CoalgebraNumber ef_coalgebra_number(const Structure& a, std::size_t max_k)
{
    CoalgebraNumber result;
    result.max_k = max_k;
    const auto n = a.size();
    if (n == 0) {
        if (max_k >= 1) {
            result.value = 1;
            result.witness = ForestStructure(a);
        }
        return result;
    }
    const auto choices = detail::parent_choices(n, 0);
    for (std::size_t k = 1; k <= max_k; ++k) {
        std::vector<std::optional<detail::ParentVector>> found(choices.size());
        const auto m = static_cast<long>(choices.size());
#pragma omp parallel for schedule(dynamic)
        for (long c = 0; c < m; ++c)
            detail::forest_orders_from(a, k, choices[static_cast<std::size_t>(c)],
                                       [&](const detail::ParentVector& p) {
                                           found[static_cast<std::size_t>(c)] = p;
                                           return false;
                                       });
        auto hit = std::find_if(found.begin(), found.end(), [](const auto& f) { return f.has_value(); });
        if (hit == found.end())
            continue;
        ForestStructure w(a);
        w.parent = **hit;
        if (!check_coalgebra(coalgebra_from_forest(w, k), a))
            throw InvariantError("forest order found by the coalgebra search is not a coalgebra");
        result.value = k;
        result.witness = std::move(w);
        return result;
    }
    return result;
}

} // namespace gc
