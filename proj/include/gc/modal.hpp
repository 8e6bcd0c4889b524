#pragma once

// The modal comonad on pointed Kripke structures (unary propositions, binary transitions).
//
// Depth convention: unravel(K, k) keeps walks of at most k nodes, i.e. modal depth k - 1.

#include "gc/forest.hpp"

#include <vector>

namespace gc {

/// Throws PreconditionError unless every symbol has arity 1 or 2 and the point is set.
void require_kripke(const Structure& k);
bool is_kripke(const Structure& k);

struct Step {
    std::size_t relation;
    Element state;
};

struct Walk {
    Element start;
    std::vector<Step> steps;

    Element end() const noexcept { return steps.empty() ? start : steps.back().state; }
};

struct Unravelling {
    ForestStructure forest; // a tree rooted at the point; forest.base is itself a Kripke structure
    std::vector<Walk> walks; // indexed by element of forest.base

    const Structure& structure() const noexcept { return forest.base; }
};

/// Nodes are walks from the point of at most k nodes, breadth-first, children ordered by
/// (relation, target). A proposition holds at a walk iff it holds at its end; R relates
/// a walk to each extension by an R-step.
Unravelling unravel(const Structure& k, std::size_t depth);

/// Unravelling the unravelling gives the same tree (compared by canonical code).
bool check_modal_idempotence(const Structure& k, std::size_t depth);

/// Isomorphic depth-k unravellings: graded modal equivalence up to modal depth k - 1.
bool graded_equivalence(const Structure& k1, const Structure& k2, std::size_t depth);

/// Successors of `state` along relation `relation`, ascending.
std::vector<Element> successors(const Structure& k, std::size_t relation, Element state);

} // namespace gc
