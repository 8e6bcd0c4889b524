#pragma once

// Backtracking homomorphism search shared by search/count/isomorphism.

#include "gc/structure.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace gc::detail {

/// Membership test on a target's tables. Uses a dense bit table when n^arity is small.
class TupleIndex {
public:
    explicit TupleIndex(const Structure& s);
    bool holds(std::size_t symbol, const Element* entries, std::size_t arity) const;

private:
    const Structure* s_;
    std::size_t n_;
    std::vector<std::vector<bool>> dense_;
    std::vector<bool> is_dense_;
};

class HomSearch {
public:
    HomSearch(const Structure& source, const Structure& target, bool injective = false);

    /// Visits homomorphisms in lexicographic order until the visitor returns false.
    void for_each(const std::function<bool(const std::vector<Element>&)>& visit) const;
    std::uint64_t count() const;
    /// Number of homomorphisms sending source element 0 to v.
    std::uint64_t count_from(Element v) const;

private:
    struct Constraint {
        std::size_t symbol;
        Tuple tuple;
    };

    bool consistent(std::size_t level, const std::vector<Element>& img) const;
    bool allowed(std::size_t level, Element v) const;
    template <class Visit>
    bool descend(std::size_t level, std::vector<Element>& img, std::vector<bool>& used, Visit& visit) const;

    const Structure& source_;
    const Structure& target_;
    bool injective_;
    bool feasible_ = true;
    TupleIndex index_;
    std::vector<std::vector<Constraint>> by_level_;
};

} // namespace gc::detail
