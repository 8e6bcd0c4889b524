#pragma once

// Forest-ordered and pebble-forest-ordered structures.

#include "gc/structure.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace gc {

/// A structure plus a forest order given by a parent map, and optionally a pebbling.
///
/// Height counts nodes: a single chain of n elements has height n.
struct ForestStructure {
    Structure base;
    std::vector<std::optional<Element>> parent;
    std::optional<std::vector<std::size_t>> pebble; // 1-based pebble index per element
    std::optional<std::size_t> pebble_bound;

    ForestStructure() = default;
    /// All elements start as roots.
    explicit ForestStructure(Structure s) : base(std::move(s)), parent(base.size()) {}

    std::size_t size() const noexcept { return base.size(); }
    bool pebbled() const noexcept { return pebble.has_value(); }
};

struct ForestReport {
    std::vector<std::string> violations;
    std::size_t height = 0;

    bool valid() const noexcept { return violations.empty(); }
};

/// A single-chain forest structure together with its embedding into the host forest
/// (`embedding[i]` is the host element at depth i + 1).
struct PathObject {
    ForestStructure path;
    std::vector<Element> embedding;

    std::size_t height() const noexcept { return embedding.size(); }
};

ForestReport validate_forest_structure(const ForestStructure& f);

/// Throws PreconditionError with the first violation.
void require_valid(const ForestStructure& f);

/// Depth of x, counting x itself (roots have depth 1). Assumes an acyclic parent map.
std::size_t depth_of(const ForestStructure& f, Element x);
/// Root-to-x chain, root first.
std::vector<Element> chain_to(const ForestStructure& f, Element x);
bool is_ancestor_or_self(const ForestStructure& f, Element ancestor, Element x);
inline bool comparable(const ForestStructure& f, Element x, Element y)
{
    return is_ancestor_or_self(f, x, y) || is_ancestor_or_self(f, y, x);
}
std::vector<std::vector<Element>> children_of(const ForestStructure& f);
std::vector<Element> roots_of(const ForestStructure& f);
std::size_t height_of(const ForestStructure& f);

/// Maximal chains, ordered by their leaf in declaration order.
std::vector<PathObject> branches(const ForestStructure& f);

/// Homomorphism preserving roots and the cover relation; pebbled forests must also keep pebble indices.
/// Throws PreconditionError if exactly one side is pebbled or the pebble bounds differ.
bool check_forest_morphism(const ElementMap& f, const ForestStructure& from, const ForestStructure& to);

/// Local label of x: its pebble index and point flag, plus every tuple whose deepest entry is x,
/// its entries written as depths. Throws PreconditionError if a tuple is not on a chain.
std::vector<std::string> local_labels(const ForestStructure& f);

/// Equal iff the two forests are isomorphic as (pebbled) forest-ordered structures.
/// Precondition: every tuple lies on a chain.
std::string canonical_forest_code(const ForestStructure& f);

/// Visits every forest order on `s`, as a parent vector, in lexicographic order of the
/// parent vector (roots first). Orders taller than max_height or violating the comparability
/// condition for Gaifman-adjacent elements are skipped. Stops when the visitor returns false.
void for_each_forest_order(const Structure& s, std::optional<std::size_t> max_height,
                           const std::function<bool(const std::vector<std::optional<Element>>&)>& visit);

} // namespace gc
