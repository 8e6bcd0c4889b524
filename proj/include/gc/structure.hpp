#pragma once

// Finite relational structures over a vocabulary; homomorphisms between them.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gc {

/// Elements are indices into a structure's universe, in declaration order.
using Element = std::uint32_t;
using Tuple = std::vector<Element>;
using Pair = std::pair<Element, Element>;

struct Symbol {
    std::string name;
    std::size_t arity = 1;

    bool operator==(const Symbol&) const = default;
};

class Vocabulary {
public:
    Vocabulary() = default;
    Vocabulary(std::initializer_list<Symbol> symbols);

    /// Appends a symbol. Throws PreconditionError on a duplicate name or zero arity.
    std::size_t add(std::string name, std::size_t arity);

    std::optional<std::size_t> find(std::string_view name) const;
    std::size_t size() const noexcept { return symbols_.size(); }
    const Symbol& operator[](std::size_t i) const { return symbols_[i]; }
    const std::vector<Symbol>& symbols() const noexcept { return symbols_; }

    bool operator==(const Vocabulary& other) const { return symbols_ == other.symbols_; }

private:
    std::vector<Symbol> symbols_;
};

/// A finite relational structure with an optional distinguished point.
///
/// Built incrementally, then used as a value. Relation tables are sets, so adding a
/// tuple twice is a no-op.
class Structure {
public:
    Structure() = default;
    explicit Structure(Vocabulary vocabulary);

    /// Throws PreconditionError if the name is already taken.
    Element add_element(std::string name);

    /// Throws PreconditionError on arity mismatch or an out-of-range entry.
    void add_tuple(std::size_t symbol, Tuple tuple);
    void add_tuple(std::string_view symbol, std::initializer_list<std::string_view> names);
    void set_point(std::optional<Element> point);

    const Vocabulary& vocabulary() const noexcept { return vocabulary_; }
    std::size_t size() const noexcept { return names_.size(); }
    bool empty() const noexcept { return names_.empty(); }
    const std::string& name(Element e) const { return names_[e]; }
    const std::vector<std::string>& names() const noexcept { return names_; }
    std::optional<Element> find(std::string_view name) const;

    const std::set<Tuple>& table(std::size_t symbol) const { return tables_[symbol]; }
    bool holds(std::size_t symbol, const Tuple& tuple) const { return tables_[symbol].contains(tuple); }
    std::size_t tuple_count() const;
    std::optional<Element> point() const noexcept { return point_; }

    bool operator==(const Structure& other) const;

private:
    Vocabulary vocabulary_;
    std::vector<std::string> names_;
    std::map<std::string, Element, std::less<>> index_;
    std::vector<std::set<Tuple>> tables_;
    std::optional<Element> point_;
};

/// A possibly partial map between two universes, indexed by source element.
class ElementMap {
public:
    ElementMap() = default;
    explicit ElementMap(std::size_t source_size) : image_(source_size) {}
    /// A total map from its image vector.
    explicit ElementMap(const std::vector<Element>& image);

    void set(Element from, Element to) { image_.at(from) = to; }
    std::optional<Element> operator()(Element from) const { return image_.at(from); }
    Element at(Element from) const;
    std::size_t source_size() const noexcept { return image_.size(); }
    bool is_total() const;
    /// Defined pairs in source order.
    std::vector<Pair> pairs() const;

    bool operator==(const ElementMap&) const = default;

private:
    std::vector<std::optional<Element>> image_;
};

/// Simple undirected graph on element indices.
struct Graph {
    std::size_t vertex_count = 0;
    std::vector<Pair> edges; // (u, v) with u < v, sorted
    std::vector<std::vector<bool>> adjacency;

    explicit Graph(std::size_t n = 0) : vertex_count(n), adjacency(n, std::vector<bool>(n, false)) {}
    void add_edge(Element u, Element v);
    bool adjacent(Element u, Element v) const { return adjacency[u][v]; }
    std::vector<Element> neighbours(Element v) const;
};

enum class MapMode { hom, iso };
enum class PartialMode { hom, iso };

Graph gaifman_graph(const Structure& a);

/// Throws PreconditionError if the map is not total or has out-of-range entries.
bool check_map(const ElementMap& f, const Structure& source, const Structure& target, MapMode mode);

/// The pair set must be single-valued (and for iso, injective); it must preserve (and for iso,
/// reflect) every tuple lying wholly inside its domain (image).
bool check_partial_map(std::span<const Pair> pairs, const Structure& a, const Structure& b, PartialMode mode);

/// Homomorphisms in lexicographic order of images taken in declaration order.
std::vector<ElementMap> search_homomorphisms(const Structure& source, const Structure& target,
                                             std::optional<std::size_t> limit = std::nullopt);
bool has_homomorphism(const Structure& source, const Structure& target);

/// OpenMP kernel: the branches below the first source element are counted in parallel.
std::uint64_t count_homomorphisms(const Structure& source, const Structure& target);
/// Single-threaded reference for count_homomorphisms.
std::uint64_t count_homomorphisms_serial(const Structure& source, const Structure& target);

/// Lexicographically first isomorphism, if any. Respects the distinguished point.
std::optional<ElementMap> find_isomorphism(const Structure& a, const Structure& b);
inline bool is_isomorphic(const Structure& a, const Structure& b) { return find_isomorphism(a, b).has_value(); }

/// Isomorphism-invariant code: the least relabelled encoding over all permutations.
/// Exponential in the universe size; meant for structures of at most ~8 elements.
std::string canonical_structure_code(const Structure& a);

} // namespace gc
