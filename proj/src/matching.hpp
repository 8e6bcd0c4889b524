#pragma once

#include "gc/structure.hpp"

#include <optional>
#include <vector>

namespace gc::detail {

/// Perfect matching of a square bipartite compatibility matrix by augmenting paths, left
/// vertices taken in order. result[i] is the right vertex matched to i.
std::optional<std::vector<Element>> perfect_matching(const std::vector<std::vector<bool>>& ok);

} // namespace gc::detail
