#include "gc/forest.hpp"

#include "forest_search.hpp"
#include "gc/errors.hpp"

#include <algorithm>
#include <map>

namespace gc {

namespace {

bool acyclic(const std::vector<std::optional<Element>>& parent)
{
    const auto n = parent.size();
    // 0 unvisited, 1 on the current walk, 2 known to reach a root
    std::vector<int> state(n, 0);
    for (Element start = 0; start < n; ++start) {
        std::vector<Element> walk;
        Element x = start;
        while (true) {
            if (state[x] == 2)
                break;
            if (state[x] == 1)
                return false;
            state[x] = 1;
            walk.push_back(x);
            if (!parent[x])
                break;
            x = *parent[x];
        }
        for (auto w : walk)
            state[w] = 2;
    }
    return true;
}

std::string element_label(const Structure& s, Element e) { return "'" + s.name(e) + "'"; }

} // namespace

std::size_t depth_of(const ForestStructure& f, Element x)
{
    std::size_t d = 1;
    while (f.parent[x]) {
        x = *f.parent[x];
        ++d;
    }
    return d;
}

std::vector<Element> chain_to(const ForestStructure& f, Element x)
{
    std::vector<Element> chain{x};
    while (f.parent[x]) {
        x = *f.parent[x];
        chain.push_back(x);
    }
    std::reverse(chain.begin(), chain.end());
    return chain;
}

bool is_ancestor_or_self(const ForestStructure& f, Element ancestor, Element x)
{
    while (true) {
        if (x == ancestor)
            return true;
        if (!f.parent[x])
            return false;
        x = *f.parent[x];
    }
}

std::vector<std::vector<Element>> children_of(const ForestStructure& f)
{
    std::vector<std::vector<Element>> ch(f.size());
    for (Element x = 0; x < f.size(); ++x)
        if (f.parent[x])
            ch[*f.parent[x]].push_back(x);
    return ch;
}

std::vector<Element> roots_of(const ForestStructure& f)
{
    std::vector<Element> r;
    for (Element x = 0; x < f.size(); ++x)
        if (!f.parent[x])
            r.push_back(x);
    return r;
}

std::size_t height_of(const ForestStructure& f)
{
    std::size_t h = 0;
    for (Element x = 0; x < f.size(); ++x)
        h = std::max(h, depth_of(f, x));
    return h;
}

ForestReport validate_forest_structure(const ForestStructure& f)
{
    ForestReport report;
    const auto& s = f.base;
    const auto n = s.size();
    if (f.parent.size() != n) {
        report.violations.push_back("parent map has " + std::to_string(f.parent.size()) + " entries for " +
                                    std::to_string(n) + " elements");
        return report;
    }
    for (Element x = 0; x < n; ++x) {
        if (f.parent[x] && *f.parent[x] >= n) {
            report.violations.push_back("parent of " + element_label(s, x) + " is outside the universe");
            return report;
        }
        if (f.parent[x] == x) {
            report.violations.push_back(element_label(s, x) + " is its own parent");
            return report;
        }
    }
    if (!acyclic(f.parent)) {
        report.violations.push_back("parent map contains a cycle");
        return report;
    }
    report.height = height_of(f);

    const auto g = gaifman_graph(s);
    for (auto [a, b] : g.edges)
        if (!comparable(f, a, b))
            report.violations.push_back("adjacent elements " + element_label(s, a) + " and " +
                                        element_label(s, b) + " are incomparable");

    if (f.pebble) {
        const auto& p = *f.pebble;
        if (p.size() != n) {
            report.violations.push_back("pebbling has the wrong number of entries");
            return report;
        }
        for (Element x = 0; x < n; ++x)
            if (p[x] == 0 || (f.pebble_bound && p[x] > *f.pebble_bound))
                report.violations.push_back("pebble index of " + element_label(s, x) + " out of range");
        for (auto [u, v] : g.edges) {
            Element lo = u, hi = v;
            if (is_ancestor_or_self(f, hi, lo))
                std::swap(lo, hi);
            if (!is_ancestor_or_self(f, lo, hi))
                continue; // already reported as incomparable
            for (Element x = hi; x != lo; x = *f.parent[x])
                if (p[x] == p[lo]) {
                    report.violations.push_back("pebble " + std::to_string(p[lo]) + " of " +
                                                element_label(s, lo) + " is reused at " + element_label(s, x) +
                                                " below it, before adjacent " + element_label(s, hi));
                    break;
                }
        }
    }
    return report;
}

void require_valid(const ForestStructure& f)
{
    auto r = validate_forest_structure(f);
    if (!r.valid())
        throw PreconditionError("invalid forest structure: " + r.violations.front());
}

std::vector<PathObject> branches(const ForestStructure& f)
{
    require_valid(f);
    const auto ch = children_of(f);
    std::vector<PathObject> out;
    for (Element leaf = 0; leaf < f.size(); ++leaf) {
        if (!ch[leaf].empty())
            continue;
        PathObject po;
        po.embedding = chain_to(f, leaf);
        Structure s(f.base.vocabulary());
        std::vector<std::optional<Element>> local(f.size());
        for (auto x : po.embedding)
            local[x] = s.add_element(f.base.name(x));
        for (std::size_t sym = 0; sym < s.vocabulary().size(); ++sym)
            for (const auto& t : f.base.table(sym)) {
                Tuple u;
                for (auto e : t) {
                    if (!local[e])
                        break;
                    u.push_back(*local[e]);
                }
                if (u.size() == t.size())
                    s.add_tuple(sym, std::move(u));
            }
        if (f.base.point() && local[*f.base.point()])
            s.set_point(local[*f.base.point()]);
        ForestStructure path(std::move(s));
        for (std::size_t i = 1; i < po.embedding.size(); ++i)
            path.parent[i] = static_cast<Element>(i - 1);
        if (f.pebble) {
            std::vector<std::size_t> p;
            for (auto x : po.embedding)
                p.push_back((*f.pebble)[x]);
            path.pebble = std::move(p);
            path.pebble_bound = f.pebble_bound;
        }
        po.path = std::move(path);
        out.push_back(std::move(po));
    }
    return out;
}

bool check_forest_morphism(const ElementMap& f, const ForestStructure& from, const ForestStructure& to)
{
    if (from.pebbled() != to.pebbled() || from.pebble_bound != to.pebble_bound)
        throw PreconditionError("forest morphism between structures with different pebble bounds");
    if (!check_map(f, from.base, to.base, MapMode::hom))
        return false;
    for (Element x = 0; x < from.size(); ++x) {
        const auto y = f.at(x);
        if (!from.parent[x]) {
            if (to.parent[y])
                return false;
        } else if (to.parent[y] != f.at(*from.parent[x])) {
            return false;
        }
        if (from.pebble && (*from.pebble)[x] != (*to.pebble)[y])
            return false;
    }
    return true;
}

std::vector<std::string> local_labels(const ForestStructure& f)
{
    const auto n = f.size();
    std::vector<std::size_t> depth(n);
    for (Element x = 0; x < n; ++x)
        depth[x] = depth_of(f, x);
    std::vector<std::vector<std::string>> facts(n);
    for (std::size_t sym = 0; sym < f.base.vocabulary().size(); ++sym)
        for (const auto& t : f.base.table(sym)) {
            Element deepest = t.front();
            for (auto e : t)
                if (depth[e] > depth[deepest])
                    deepest = e;
            std::string fact = std::to_string(sym) + ":";
            for (auto e : t) {
                if (!is_ancestor_or_self(f, e, deepest))
                    throw PreconditionError("tuple of '" + f.base.vocabulary()[sym].name +
                                            "' spans incomparable elements");
                fact += std::to_string(depth[e]) + ".";
            }
            facts[deepest].push_back(std::move(fact));
        }
    std::vector<std::string> labels(n);
    for (Element x = 0; x < n; ++x) {
        std::sort(facts[x].begin(), facts[x].end());
        std::string label = f.pebble ? "p" + std::to_string((*f.pebble)[x]) : std::string("p-");
        if (f.base.point() == x)
            label += "*";
        for (const auto& fact : facts[x])
            label += "|" + fact;
        labels[x] = std::move(label);
    }
    return labels;
}

std::string canonical_forest_code(const ForestStructure& f)
{
    require_valid(f);
    const auto labels = local_labels(f);
    const auto ch = children_of(f);
    // Children are listed after their parents is not guaranteed, so order by depth.
    std::vector<Element> order(f.size());
    for (Element x = 0; x < f.size(); ++x)
        order[x] = x;
    std::vector<std::size_t> depth(f.size());
    for (Element x = 0; x < f.size(); ++x)
        depth[x] = depth_of(f, x);
    std::stable_sort(order.begin(), order.end(), [&](Element a, Element b) { return depth[a] > depth[b]; });

    std::vector<std::string> code(f.size());
    for (auto x : order) {
        std::vector<std::string> sub;
        for (auto c : ch[x])
            sub.push_back(std::move(code[c]));
        std::sort(sub.begin(), sub.end());
        std::string c = "(" + labels[x];
        for (auto& s : sub)
            c += s;
        c += ")";
        code[x] = std::move(c);
    }
    std::vector<std::string> roots;
    for (auto r : roots_of(f))
        roots.push_back(std::move(code[r]));
    std::sort(roots.begin(), roots.end());
    std::string out = f.pebble_bound ? "k" + std::to_string(*f.pebble_bound) : std::string("k-");
    out += f.pebbled() ? "P[" : "[";
    for (auto& r : roots)
        out += r;
    out += "]";
    return out;
}

namespace detail {

std::vector<std::optional<Element>> parent_choices(std::size_t n, Element i)
{
    std::vector<std::optional<Element>> c{std::nullopt};
    for (Element j = 0; j < n; ++j)
        if (j != i)
            c.emplace_back(j);
    return c;
}

namespace {

struct OrderWalker {
    const Structure& s;
    std::optional<std::size_t> max_height;
    const std::function<bool(const ParentVector&)>& visit;
    std::vector<Pair> edges;
    ParentVector parent;
    std::vector<bool> assigned;

    bool closes_cycle(Element i) const
    {
        Element x = i;
        while (parent[x] && assigned[*parent[x]]) {
            x = *parent[x];
            if (x == i)
                return true;
        }
        return parent[x] && *parent[x] == i;
    }

    bool leaf_ok() const
    {
        const auto n = parent.size();
        if (max_height) {
            for (Element x = 0; x < n; ++x) {
                std::size_t d = 1;
                for (Element y = x; parent[y]; y = *parent[y])
                    if (++d > *max_height)
                        return false;
            }
        }
        auto anc = [&](Element a, Element x) {
            while (true) {
                if (x == a)
                    return true;
                if (!parent[x])
                    return false;
                x = *parent[x];
            }
        };
        for (auto [a, b] : edges)
            if (!anc(a, b) && !anc(b, a))
                return false;
        return true;
    }

    bool walk(Element i)
    {
        if (i == parent.size())
            return leaf_ok() ? visit(parent) : true;
        for (auto c : parent_choices(parent.size(), i)) {
            parent[i] = c;
            assigned[i] = true;
            if (!c || !closes_cycle(i)) {
                if (!walk(i + 1))
                    return false;
            }
            assigned[i] = false;
        }
        parent[i] = std::nullopt;
        return true;
    }
};

} // namespace

bool forest_orders_from(const Structure& s, std::optional<std::size_t> max_height,
                        std::optional<Element> parent_of_first,
                        const std::function<bool(const ParentVector&)>& visit)
{
    const auto n = s.size();
    OrderWalker w{s, max_height, visit, gaifman_graph(s).edges, ParentVector(n), std::vector<bool>(n, false)};
    if (n == 0)
        return visit(w.parent);
    w.parent[0] = parent_of_first;
    w.assigned[0] = true;
    if (parent_of_first && (*parent_of_first == 0 || *parent_of_first >= n))
        return true;
    return w.walk(1);
}

} // namespace detail

void for_each_forest_order(const Structure& s, std::optional<std::size_t> max_height,
                           const std::function<bool(const std::vector<std::optional<Element>>&)>& visit)
{
    if (s.size() == 0) {
        visit({});
        return;
    }
    for (auto c : detail::parent_choices(s.size(), 0))
        if (!detail::forest_orders_from(s, max_height, c, visit))
            return;
}

} // namespace gc
