#pragma once

// The Ehrenfeucht-Fraisse comonad as a forest cover of plays of length <= k. Coalgebras
// over it are exactly forest orders of height <= k.

#include "gc/forest.hpp"
#include "gc/structure.hpp"

#include <map>
#include <optional>
#include <vector>

namespace gc {

/// A play: a non-empty sequence of base elements.
using Sequence = std::vector<Element>;

/// Node cap for materialized covers. Read from GC_MAX_UNIVERSE, default 200000.
std::size_t materialization_limit();

struct EFCover {
    ForestStructure forest;
    std::vector<Sequence> sequences; // indexed by element of forest.base
    std::map<Sequence, Element> index;
    std::size_t bound = 0;

    const Structure& structure() const noexcept { return forest.base; }
    Element element_of(const Sequence& s) const;
};

/// Universe: all sequences of length 1..k, ordered by length then lexicographically.
/// A tuple of sequences is related iff the sequences are pairwise prefix-comparable and
/// their last entries are related in A. Throws PreconditionError for k = 0 or when the
/// cover would exceed materialization_limit().
EFCover build_ef(const Structure& a, std::size_t k);

bool is_prefix(const Sequence& s, const Sequence& t);
inline Element counit_of(const Sequence& s) { return s.back(); }
/// All non-empty prefixes of s, shortest first.
std::vector<Sequence> comultiplication_of(const Sequence& s);

/// The counit as an element map from the cover to its base.
ElementMap counit_map(const EFCover& cover);

/// For a forest T of height <= k and a homomorphism f from T's structure to A, the unique
/// forest morphism into the cover whose composite with the counit is f: each x goes to the
/// images of its root-to-x chain.
/// Throws PreconditionError if T is too tall or f is not a homomorphism.
ElementMap cokleisli_extend(const ElementMap& f, const ForestStructure& t, const Structure& a,
                            const EFCover& cover);

struct Coalgebra {
    std::size_t bound = 0;
    std::vector<Sequence> map; // carrier element -> sequence over the carrier
};

/// Checks that c is a homomorphism into the cover obeying both coalgebra laws; the second
/// law says every prefix of alpha(a) is alpha of its own last entry.
bool check_coalgebra(const Coalgebra& c, const Structure& carrier);

/// Coalgebra induced by a forest order: each element maps to its root-to-element chain.
Coalgebra coalgebra_from_forest(const ForestStructure& f, std::size_t bound);
/// Forest order induced by a coalgebra: parent of a is the last entry of alpha(a) minus its last step.
/// Returns nullopt when some alpha(a) has a proper prefix that is not in the image of alpha.
std::optional<std::vector<std::optional<Element>>> forest_from_coalgebra(const Coalgebra& c);

struct CoalgebraNumber {
    std::optional<std::size_t> value; // nullopt: exceeds max_k
    std::size_t max_k = 0;
    std::optional<ForestStructure> witness;
};

/// Least k <= max_k admitting a coalgebra, found by searching forest orders of height <= k
/// (in parallel over the parent of the first element). The witness is the lexicographically
/// first order, checked as a coalgebra before being returned.
CoalgebraNumber ef_coalgebra_number(const Structure& a, std::size_t max_k);

} // namespace gc
