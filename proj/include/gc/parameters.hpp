#pragma once

// Exact tree-depth and treewidth of the Gaifman graph by dynamic programming over vertex
// subsets (desk scale: at most 24 vertices).

#include "gc/structure.hpp"

#include <cstddef>

namespace gc {

/// Minimum height of a forest order in which Gaifman-adjacent elements are comparable.
/// Computed as td(S) = 1 + min_v td(S - v) on connected S, max over components.
/// Throws PreconditionError on an empty universe or more than 24 elements.
std::size_t tree_depth(const Structure& a);
std::size_t tree_depth(const Graph& g);

/// Treewidth via TW(S) = min_{v in S} max(TW(S - v), |Q(S - v, v)|), where Q(S, v) is the
/// set of vertices outside S + v reachable from v through S. Edgeless graphs have width 0.
/// Throws PreconditionError on an empty universe or more than 24 elements.
std::size_t treewidth(const Structure& a);
std::size_t treewidth(const Graph& g);

} // namespace gc
