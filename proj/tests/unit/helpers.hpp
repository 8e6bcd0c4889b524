#pragma once

#include "gc/builders.hpp"
#include "gc/io.hpp"
#include "gc/structure.hpp"

#include <string>

namespace gc::test {

inline Structure parse(const std::string& text) { return parse_structure(text); }

// Pointed Kripke structure over {P/1, R/2}; props lists the states where P holds.
inline Structure kripke(std::size_t n, std::initializer_list<Pair> edges, std::initializer_list<Element> props = {},
                        Element point = 0)
{
    Structure k(Vocabulary{{"P", 1}, {"R", 2}});
    for (std::size_t i = 0; i < n; ++i)
        k.add_element("s" + std::to_string(i));
    for (auto p : props)
        k.add_tuple(0, {p});
    for (auto [u, v] : edges)
        k.add_tuple(1, {u, v});
    k.set_point(point);
    return k;
}

inline Structure directed(std::size_t n, std::initializer_list<Pair> edges)
{
    Structure s(edge_vocabulary());
    for (std::size_t i = 0; i < n; ++i)
        s.add_element(std::string(1, static_cast<char>('a' + i)));
    for (auto [u, v] : edges)
        s.add_tuple(0, {u, v});
    return s;
}

} // namespace gc::test
