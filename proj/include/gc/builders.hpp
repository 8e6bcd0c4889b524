#pragma once

// Named small structures, plus exhaustive generators up to isomorphism.

#include "gc/structure.hpp"

#include <cstddef>
#include <vector>

namespace gc {

/// Vocabulary {E/2}.
Vocabulary edge_vocabulary();

/// Undirected graphs as symmetric irreflexive E. Elements are named v0, v1, ...
Structure graph_from_edges(std::size_t n, const std::vector<Pair>& edges);
Structure complete_graph(std::size_t n);
Structure cycle_graph(std::size_t n);
Structure path_graph(std::size_t n);
Structure edgeless_graph(std::size_t n);
/// Strict linear order on n elements, relation named `<`.
Structure linear_order(std::size_t n);
/// Disjoint union; elements of the second summand are renamed if their names clash.
Structure disjoint_union(const Structure& a, const Structure& b);
/// Adds the identity relation as an explicit binary symbol `I` (primed until fresh), so that
/// constructions which only see relations, such as the EF cover, also see equality.
Structure with_equality(const Structure& a);

/// True iff the vocabulary is a single binary symbol, interpreted symmetric and irreflexive.
bool is_simple_graph(const Structure& s);

/// Every structure over `vocab` with exactly n elements (labelled). n^arity tuple slots per
/// symbol; throws PreconditionError beyond 24 slots in total.
std::vector<Structure> all_labelled_structures(const Vocabulary& vocab, std::size_t n);

/// One representative per isomorphism class over `vocab` with at most max_size elements,
/// ordered by size, then by canonical code.
std::vector<Structure> structures_up_to_iso(const Vocabulary& vocab, std::size_t max_size);

/// Simple graphs with at most max_size vertices up to isomorphism, same ordering.
std::vector<Structure> graphs_up_to_iso(std::size_t max_size);

/// Pointed structures over `vocab` with 1..max_size elements up to (point-preserving) isomorphism.
std::vector<Structure> pointed_structures_up_to_iso(const Vocabulary& vocab, std::size_t max_size);

} // namespace gc
