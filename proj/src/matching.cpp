#include "matching.hpp"

#include <functional>

namespace gc::detail {

std::optional<std::vector<Element>> perfect_matching(const std::vector<std::vector<bool>>& ok)
{
    const auto n = ok.size();
    for (const auto& row : ok)
        if (row.size() != n)
            return std::nullopt;
    std::vector<int> owner(n, -1); // right -> left
    std::vector<bool> seen;
    std::function<bool(std::size_t)> augment = [&](std::size_t left) {
        for (std::size_t right = 0; right < n; ++right) {
            if (!ok[left][right] || seen[right])
                continue;
            seen[right] = true;
            if (owner[right] < 0 || augment(static_cast<std::size_t>(owner[right]))) {
                owner[right] = static_cast<int>(left);
                return true;
            }
        }
        return false;
    };
    for (std::size_t left = 0; left < n; ++left) {
        seen.assign(n, false);
        if (!augment(left))
            return std::nullopt;
    }
    std::vector<Element> result(n);
    for (std::size_t right = 0; right < n; ++right)
        result[static_cast<std::size_t>(owner[right])] = static_cast<Element>(right);
    return result;
}

} // namespace gc::detail
