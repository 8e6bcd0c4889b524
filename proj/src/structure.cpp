#include "gc/structure.hpp"

#include "gc/errors.hpp"
#include "hom_search.hpp"

#include <algorithm>
#include <numeric>

namespace gc {

Vocabulary::Vocabulary(std::initializer_list<Symbol> symbols)
{
    for (const auto& s : symbols)
        add(s.name, s.arity);
}

std::size_t Vocabulary::add(std::string name, std::size_t arity)
{
    if (arity == 0)
        throw PreconditionError("relation '" + name + "' must have positive arity");
    if (find(name))
        throw PreconditionError("duplicate relation symbol '" + name + "'");
    symbols_.push_back({std::move(name), arity});
    return symbols_.size() - 1;
}

std::optional<std::size_t> Vocabulary::find(std::string_view name) const
{
    for (std::size_t i = 0; i < symbols_.size(); ++i)
        if (symbols_[i].name == name)
            return i;
    return std::nullopt;
}

Structure::Structure(Vocabulary vocabulary) : vocabulary_(std::move(vocabulary)), tables_(vocabulary_.size()) {}

Element Structure::add_element(std::string name)
{
    if (index_.contains(name))
        throw PreconditionError("duplicate element '" + name + "'");
    auto e = static_cast<Element>(names_.size());
    index_.emplace(name, e);
    names_.push_back(std::move(name));
    return e;
}

void Structure::add_tuple(std::size_t symbol, Tuple tuple)
{
    if (symbol >= vocabulary_.size())
        throw PreconditionError("unknown relation index " + std::to_string(symbol));
    const auto& sym = vocabulary_[symbol];
    if (tuple.size() != sym.arity)
        throw PreconditionError("relation '" + sym.name + "' has arity " + std::to_string(sym.arity) +
                                ", got a tuple of length " + std::to_string(tuple.size()));
    for (auto e : tuple)
        if (e >= names_.size())
            throw PreconditionError("tuple entry " + std::to_string(e) + " outside the universe");
    tables_[symbol].insert(std::move(tuple));
}

void Structure::add_tuple(std::string_view symbol, std::initializer_list<std::string_view> names)
{
    auto s = vocabulary_.find(symbol);
    if (!s)
        throw PreconditionError("unknown relation '" + std::string(symbol) + "'");
    Tuple t;
    for (auto n : names) {
        auto e = find(n);
        if (!e)
            throw PreconditionError("unknown element '" + std::string(n) + "'");
        t.push_back(*e);
    }
    add_tuple(*s, std::move(t));
}

void Structure::set_point(std::optional<Element> point)
{
    if (point && *point >= names_.size())
        throw PreconditionError("point outside the universe");
    point_ = point;
}

std::optional<Element> Structure::find(std::string_view name) const
{
    auto it = index_.find(name);
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

std::size_t Structure::tuple_count() const
{
    std::size_t n = 0;
    for (const auto& t : tables_)
        n += t.size();
    return n;
}

bool Structure::operator==(const Structure& other) const
{
    return vocabulary_ == other.vocabulary_ && names_ == other.names_ && tables_ == other.tables_ &&
           point_ == other.point_;
}

ElementMap::ElementMap(const std::vector<Element>& image) : image_(image.begin(), image.end()) {}

Element ElementMap::at(Element from) const
{
    auto v = image_.at(from);
    if (!v)
        throw PreconditionError("map undefined on element " + std::to_string(from));
    return *v;
}

bool ElementMap::is_total() const
{
    return std::all_of(image_.begin(), image_.end(), [](const auto& v) { return v.has_value(); });
}

std::vector<Pair> ElementMap::pairs() const
{
    std::vector<Pair> out;
    for (Element a = 0; a < image_.size(); ++a)
        if (image_[a])
            out.emplace_back(a, *image_[a]);
    return out;
}

void Graph::add_edge(Element u, Element v)
{
    if (u == v || adjacency[u][v])
        return;
    adjacency[u][v] = adjacency[v][u] = true;
    Pair e = std::minmax(u, v);
    edges.insert(std::lower_bound(edges.begin(), edges.end(), e), e);
}

std::vector<Element> Graph::neighbours(Element v) const
{
    std::vector<Element> out;
    for (Element u = 0; u < vertex_count; ++u)
        if (adjacency[v][u])
            out.push_back(u);
    return out;
}

Graph gaifman_graph(const Structure& a)
{
    Graph g(a.size());
    for (std::size_t s = 0; s < a.vocabulary().size(); ++s)
        for (const auto& t : a.table(s))
            for (std::size_t i = 0; i < t.size(); ++i)
                for (std::size_t j = i + 1; j < t.size(); ++j)
                    g.add_edge(t[i], t[j]);
    return g;
}

bool check_map(const ElementMap& f, const Structure& source, const Structure& target, MapMode mode)
{
    if (f.source_size() != source.size() || !f.is_total())
        throw PreconditionError("check_map needs a total map on the source universe");
    std::vector<Element> img(source.size());
    for (Element a = 0; a < source.size(); ++a) {
        img[a] = f.at(a);
        if (img[a] >= target.size())
            throw PreconditionError("map image outside the target universe");
    }
    if (source.vocabulary() != target.vocabulary())
        return false;
    if (source.point() && target.point() && img[*source.point()] != *target.point())
        return false;

    const auto nsym = source.vocabulary().size();
    for (std::size_t s = 0; s < nsym; ++s)
        for (const auto& t : source.table(s)) {
            Tuple u(t.size());
            std::transform(t.begin(), t.end(), u.begin(), [&](Element e) { return img[e]; });
            if (!target.holds(s, u))
                return false;
        }
    if (mode == MapMode::hom)
        return true;

    if (source.size() != target.size())
        return false;
    std::vector<bool> hit(target.size(), false);
    for (auto b : img) {
        if (hit[b])
            return false;
        hit[b] = true;
    }
    if (source.point().has_value() != target.point().has_value())
        return false;
    // Injective and preserving: reflection holds iff the tables have equal sizes.
    for (std::size_t s = 0; s < nsym; ++s)
        if (source.table(s).size() != target.table(s).size())
            return false;
    return true;
}

bool check_partial_map(std::span<const Pair> pairs, const Structure& a, const Structure& b, PartialMode mode)
{
    std::vector<std::optional<Element>> forward(a.size()), backward(b.size());
    for (auto [x, y] : pairs) {
        if (x >= a.size() || y >= b.size())
            throw PreconditionError("partial map entry outside its universe");
        if (forward[x] && *forward[x] != y)
            return false;
        forward[x] = y;
        if (mode == PartialMode::iso) {
            if (backward[y] && *backward[y] != x)
                return false;
            backward[y] = x;
        }
    }
    const auto nsym = a.vocabulary().size();
    for (std::size_t s = 0; s < nsym; ++s) {
        for (const auto& t : a.table(s)) {
            Tuple u;
            u.reserve(t.size());
            for (auto e : t) {
                if (!forward[e])
                    break;
                u.push_back(*forward[e]);
            }
            if (u.size() == t.size() && !b.holds(s, u))
                return false;
        }
        if (mode == PartialMode::iso) {
            for (const auto& t : b.table(s)) {
                Tuple u;
                u.reserve(t.size());
                for (auto e : t) {
                    if (!backward[e])
                        break;
                    u.push_back(*backward[e]);
                }
                if (u.size() == t.size() && !a.holds(s, u))
                    return false;
            }
        }
    }
    return true;
}

std::vector<ElementMap> search_homomorphisms(const Structure& source, const Structure& target,
                                             std::optional<std::size_t> limit)
{
    std::vector<ElementMap> out;
    if (limit && *limit == 0)
        return out;
    detail::HomSearch search(source, target);
    search.for_each([&](const std::vector<Element>& img) {
        out.emplace_back(img);
        return !limit || out.size() < *limit;
    });
    return out;
}

bool has_homomorphism(const Structure& source, const Structure& target)
{
    return !search_homomorphisms(source, target, 1).empty();
}

std::uint64_t count_homomorphisms_serial(const Structure& source, const Structure& target)
{
    detail::HomSearch search(source, target);
    return search.count();
}

std::uint64_t count_homomorphisms(const Structure& source, const Structure& target)
{
    detail::HomSearch search(source, target);
    if (source.size() == 0 || target.size() == 0)
        return search.count();
    const auto branches = static_cast<long>(target.size());
    std::uint64_t total = 0;
#pragma omp parallel for reduction(+ : total) schedule(dynamic)
    for (long v = 0; v < branches; ++v)
        total += search.count_from(static_cast<Element>(v));
    return total;
}

std::optional<ElementMap> find_isomorphism(const Structure& a, const Structure& b)
{
    if (a.size() != b.size() || a.vocabulary() != b.vocabulary() ||
        a.point().has_value() != b.point().has_value())
        return std::nullopt;
    for (std::size_t s = 0; s < a.vocabulary().size(); ++s)
        if (a.table(s).size() != b.table(s).size())
            return std::nullopt;
    detail::HomSearch search(a, b, /*injective=*/true);
    std::optional<ElementMap> found;
    search.for_each([&](const std::vector<Element>& img) {
        found.emplace(img);
        return false;
    });
    return found;
}

std::string canonical_structure_code(const Structure& a)
{
    const auto n = a.size();
    const auto& vocab = a.vocabulary();
    std::vector<Element> perm(n);
    std::iota(perm.begin(), perm.end(), 0);

    auto encode = [&](const std::vector<Element>& p) {
        std::vector<std::uint64_t> code;
        for (std::size_t s = 0; s < vocab.size(); ++s) {
            std::vector<std::uint64_t> rows;
            rows.reserve(a.table(s).size());
            for (const auto& t : a.table(s)) {
                std::uint64_t v = 0;
                for (auto e : t)
                    v = v * (n + 1) + p[e];
                rows.push_back(v);
            }
            std::sort(rows.begin(), rows.end());
            code.push_back(rows.size());
            code.insert(code.end(), rows.begin(), rows.end());
        }
        if (a.point())
            code.push_back(p[*a.point()]);
        return code;
    };

    auto best = encode(perm);
    while (std::next_permutation(perm.begin(), perm.end())) {
        auto c = encode(perm);
        if (c < best)
            best = std::move(c);
    }

    std::string out = std::to_string(n);
    for (const auto& s : vocab.symbols())
        out += ";" + s.name + "/" + std::to_string(s.arity);
    out += a.point() ? ";p:" : ";-:";
    for (auto v : best)
        out += std::to_string(v) + ",";
    return out;
}

} // namespace gc
