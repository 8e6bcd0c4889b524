#include "gc/builders.hpp"

#include "gc/errors.hpp"

#include <algorithm>
#include <map>

namespace gc {

namespace {

Structure with_elements(const Vocabulary& v, std::size_t n, const char* prefix = "v")
{
    Structure s(v);
    for (std::size_t i = 0; i < n; ++i)
        s.add_element(prefix + std::to_string(i));
    return s;
}

std::vector<Tuple> all_tuples(std::size_t n, std::size_t arity)
{
    std::vector<Tuple> out;
    if (n == 0)
        return out;
    Tuple t(arity, 0);
    while (true) {
        out.push_back(t);
        std::size_t i = arity;
        while (i > 0 && ++t[i - 1] == n)
            t[--i] = 0;
        if (i == 0)
            break;
    }
    return out;
}

std::vector<Structure> dedupe(std::vector<Structure> all)
{
    std::map<std::pair<std::size_t, std::string>, Structure> classes;
    for (auto& s : all) {
        auto key = std::make_pair(s.size(), canonical_structure_code(s));
        classes.try_emplace(std::move(key), std::move(s));
    }
    std::vector<Structure> out;
    out.reserve(classes.size());
    for (auto& [k, s] : classes)
        out.push_back(std::move(s));
    return out;
}

} // namespace

Vocabulary edge_vocabulary() { return Vocabulary{{"E", 2}}; }

Structure graph_from_edges(std::size_t n, const std::vector<Pair>& edges)
{
    auto s = with_elements(edge_vocabulary(), n);
    for (auto [u, v] : edges) {
        if (u == v)
            throw PreconditionError("graphs have no loops");
        s.add_tuple(0, {u, v});
        s.add_tuple(0, {v, u});
    }
    return s;
}

Structure complete_graph(std::size_t n)
{
    std::vector<Pair> e;
    for (Element i = 0; i < n; ++i)
        for (Element j = i + 1; j < n; ++j)
            e.emplace_back(i, j);
    return graph_from_edges(n, e);
}

Structure cycle_graph(std::size_t n)
{
    if (n < 3)
        throw PreconditionError("cycles need at least 3 vertices");
    std::vector<Pair> e;
    for (Element i = 0; i < n; ++i)
        e.emplace_back(i, static_cast<Element>((i + 1) % n));
    return graph_from_edges(n, e);
}

Structure path_graph(std::size_t n)
{
    std::vector<Pair> e;
    for (Element i = 0; i + 1 < n; ++i)
        e.emplace_back(i, i + 1);
    return graph_from_edges(n, e);
}

Structure edgeless_graph(std::size_t n) { return graph_from_edges(n, {}); }

Structure linear_order(std::size_t n)
{
    auto s = with_elements(Vocabulary{{"<", 2}}, n, "o");
    for (Element i = 0; i < n; ++i)
        for (Element j = i + 1; j < n; ++j)
            s.add_tuple(0, {i, j});
    return s;
}

Structure with_equality(const Structure& a)
{
    Vocabulary v = a.vocabulary();
    std::string name = "I";
    while (v.find(name))
        name += "_";
    const auto eq = v.add(name, 2);
    Structure s(v);
    for (const auto& n : a.names())
        s.add_element(n);
    for (std::size_t sym = 0; sym < a.vocabulary().size(); ++sym)
        for (const auto& t : a.table(sym))
            s.add_tuple(sym, t);
    for (Element x = 0; x < a.size(); ++x)
        s.add_tuple(eq, {x, x});
    if (a.point())
        s.set_point(*a.point());
    return s;
}

Structure disjoint_union(const Structure& a, const Structure& b)
{
    if (a.vocabulary() != b.vocabulary())
        throw PreconditionError("disjoint union needs a common vocabulary");
    Structure s(a.vocabulary());
    for (const auto& n : a.names())
        s.add_element(n);
    const auto offset = static_cast<Element>(a.size());
    for (const auto& n : b.names()) {
        std::string name = n;
        while (s.find(name))
            name += "_";
        s.add_element(std::move(name));
    }
    for (std::size_t sym = 0; sym < a.vocabulary().size(); ++sym) {
        for (const auto& t : a.table(sym))
            s.add_tuple(sym, t);
        for (auto t : b.table(sym)) {
            for (auto& e : t)
                e += offset;
            s.add_tuple(sym, std::move(t));
        }
    }
    return s;
}

bool is_simple_graph(const Structure& s)
{
    const auto& v = s.vocabulary();
    if (v.size() != 1 || v[0].arity != 2 || s.point())
        return false;
    for (const auto& t : s.table(0))
        if (t[0] == t[1] || !s.holds(0, {t[1], t[0]}))
            return false;
    return true;
}

std::vector<Structure> all_labelled_structures(const Vocabulary& vocab, std::size_t n)
{
    std::vector<std::pair<std::size_t, Tuple>> slots;
    for (std::size_t sym = 0; sym < vocab.size(); ++sym)
        for (auto& t : all_tuples(n, vocab[sym].arity))
            slots.emplace_back(sym, std::move(t));
    if (slots.size() > 24)
        throw PreconditionError("too many tuple slots to enumerate (" + std::to_string(slots.size()) + ")");
    std::vector<Structure> out;
    const std::uint64_t total = std::uint64_t{1} << slots.size();
    out.reserve(total);
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        auto s = with_elements(vocab, n, "e");
        for (std::size_t i = 0; i < slots.size(); ++i)
            if (mask >> i & 1)
                s.add_tuple(slots[i].first, slots[i].second);
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<Structure> structures_up_to_iso(const Vocabulary& vocab, std::size_t max_size)
{
    std::vector<Structure> out;
    for (std::size_t n = 0; n <= max_size; ++n) {
        auto level = dedupe(all_labelled_structures(vocab, n));
        std::move(level.begin(), level.end(), std::back_inserter(out));
    }
    return out;
}

std::vector<Structure> graphs_up_to_iso(std::size_t max_size)
{
    std::vector<Structure> out;
    for (std::size_t n = 0; n <= max_size; ++n) {
        std::vector<Pair> slots;
        for (Element i = 0; i < n; ++i)
            for (Element j = i + 1; j < n; ++j)
                slots.emplace_back(i, j);
        std::vector<Structure> level;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots.size()); ++mask) {
            std::vector<Pair> e;
            for (std::size_t i = 0; i < slots.size(); ++i)
                if (mask >> i & 1)
                    e.push_back(slots[i]);
            level.push_back(graph_from_edges(n, e));
        }
        level = dedupe(std::move(level));
        std::move(level.begin(), level.end(), std::back_inserter(out));
    }
    return out;
}

std::vector<Structure> pointed_structures_up_to_iso(const Vocabulary& vocab, std::size_t max_size)
{
    std::vector<Structure> out;
    for (std::size_t n = 1; n <= max_size; ++n) {
        std::vector<Structure> level;
        for (auto& s : all_labelled_structures(vocab, n))
            for (Element p = 0; p < n; ++p) {
                auto t = s;
                t.set_point(p);
                level.push_back(std::move(t));
            }
        level = dedupe(std::move(level));
        std::move(level.begin(), level.end(), std::back_inserter(out));
    }
    return out;
}

} // namespace gc
