#pragma once

#include "gc/forest.hpp"

namespace gc::detail {

using ParentVector = std::vector<std::optional<Element>>;

/// Candidate parents of element i in enumeration order: root first, then every other element.
std::vector<std::optional<Element>> parent_choices(std::size_t n, Element i);

/// for_each_forest_order restricted to orders whose element 0 has the given parent.
/// Returns false if the visitor stopped the walk.
bool forest_orders_from(const Structure& s, std::optional<std::size_t> max_height,
                        std::optional<Element> parent_of_first,
                        const std::function<bool(const ParentVector&)>& visit);

} // namespace gc::detail
