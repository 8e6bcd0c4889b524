#pragma once

// The pebbling comonad: finite truncations of the cover of pebble-move sequences, and the
// pebble coalgebra number (treewidth + 1).

#include "gc/ef.hpp"
#include "gc/forest.hpp"

#include <compare>
#include <map>
#include <vector>

namespace gc {

struct Move {
    std::size_t pebble = 1; // 1-based
    Element element = 0;

    auto operator<=>(const Move&) const = default;
};

using PebbleSequence = std::vector<Move>;

/// The cover restricted to plays of length <= `length`. The full object is infinite, so
/// anything concluded from a truncation about hom(P_k A, B) is only a certificate that
/// Spoiler wins; use solve_pebble_game for decisions.
struct PebbleCover {
    ForestStructure forest; // pebbled, pebble(s) = index of the last move
    std::vector<PebbleSequence> sequences;
    std::map<PebbleSequence, Element> index;
    std::size_t pebbles = 0;
    std::size_t length = 0;

    const Structure& structure() const noexcept { return forest.base; }
};

/// Relations lifted as for the EF cover, plus: whenever s is a proper prefix of t in a
/// related tuple, the pebble of the last move of s is not used again in t after s.
PebbleCover build_pebble_truncated(const Structure& a, std::size_t k, std::size_t length);

inline Element counit_of(const PebbleSequence& s) { return s.back().element; }

/// Pebble indices p: A -> {1..k} making (order, p) satisfy the no-reuse condition, found
/// as the lexicographically first proper colouring of the conflict graph. nullopt if none.
std::optional<std::vector<std::size_t>> pebbling_for(const Structure& a, const std::vector<std::optional<Element>>& parent,
                                                     std::size_t k);

/// Least k <= max_k such that A has a forest order satisfying the comparability condition
/// together with a valid k-pebbling. The witness is a pebbled forest with pebble_bound = k.
CoalgebraNumber pebble_coalgebra_number(const Structure& a, std::size_t max_k);

} // namespace gc
