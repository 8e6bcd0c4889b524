#pragma once

// Homomorphism-count profiles and Lovasz-style distinguishability tests.

#include "gc/structure.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace gc {

/// Test family for lovasz_test. automatic: simple graphs when both inputs are simple graphs,
/// otherwise all structures over the vocabulary.
enum class TestFamily { automatic, structures, graphs };

struct ProfileEntry {
    Structure test;
    std::uint64_t count = 0;
};

struct HomProfile {
    std::vector<ProfileEntry> entries;
    bool operator==(const HomProfile& other) const;
};

struct LovaszResult {
    bool distinguished = false;
    std::optional<Structure> witness; // first test structure with differing counts
    std::uint64_t count_a = 0;
    std::uint64_t count_b = 0;
    std::size_t tested = 0; // test structures examined
};

/// Test structures with at most max_size elements, up to isomorphism, in canonical order
/// (size, then canonical code).
std::vector<Structure> test_family(const Vocabulary& vocab, std::size_t max_size, TestFamily family);

/// First test structure C (in canonical order) with hom(C, A) != hom(C, B).
/// Throws PreconditionError if A and B have different vocabularies.
LovaszResult lovasz_test(const Structure& a, const Structure& b, std::size_t max_size,
                         TestFamily family = TestFamily::automatic, bool parallel = true);

/// Counts from every non-empty structure C over A's vocabulary with at most max_size elements
/// and tree_depth(C) <= k, in canonical order.
HomProfile bounded_td_profile(const Structure& a, std::size_t k, std::size_t max_size, bool parallel = true);

} // namespace gc
