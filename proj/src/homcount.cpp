#include "gc/homcount.hpp"

#include "gc/builders.hpp"
#include "gc/errors.hpp"
#include "gc/parameters.hpp"

namespace gc {

bool HomProfile::operator==(const HomProfile& other) const
{
    if (entries.size() != other.entries.size())
        return false;
    for (std::size_t i = 0; i < entries.size(); ++i)
        if (entries[i].count != other.entries[i].count || !(entries[i].test == other.entries[i].test))
            return false;
    return true;
}

std::vector<Structure> test_family(const Vocabulary& vocab, std::size_t max_size, TestFamily family)
{
    if (family == TestFamily::graphs) {
        if (!(vocab == edge_vocabulary()))
            throw PreconditionError("the graph test family needs the vocabulary {E/2}");
        return graphs_up_to_iso(max_size);
    }
    return structures_up_to_iso(vocab, max_size);
}

namespace {

// Counts for every family member; each count is a serial kernel so the outer loop can be parallel.
std::vector<std::uint64_t> counts_into(const std::vector<Structure>& family, const Structure& target, bool parallel)
{
    std::vector<std::uint64_t> out(family.size());
    const auto n = static_cast<long long>(family.size());
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (long long i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)] = count_homomorphisms_serial(family[static_cast<std::size_t>(i)], target);
    return out;
}

} // namespace

LovaszResult lovasz_test(const Structure& a, const Structure& b, std::size_t max_size, TestFamily family,
                         bool parallel)
{
    if (a.vocabulary() != b.vocabulary())
        throw PreconditionError("Lovasz test between structures over different vocabularies");
    if (family == TestFamily::automatic)
        family = is_simple_graph(a) && is_simple_graph(b) ? TestFamily::graphs : TestFamily::structures;
    const auto tests = test_family(a.vocabulary(), max_size, family);
    const auto ca = counts_into(tests, a, parallel);
    const auto cb = counts_into(tests, b, parallel);
    LovaszResult r;
    for (std::size_t i = 0; i < tests.size(); ++i) {
        ++r.tested;
        if (ca[i] != cb[i]) {
            r.distinguished = true;
            r.witness = tests[i];
            r.count_a = ca[i];
            r.count_b = cb[i];
            break;
        }
    }
    return r;
}

HomProfile bounded_td_profile(const Structure& a, std::size_t k, std::size_t max_size, bool parallel)
{
    if (k == 0 || max_size == 0)
        throw PreconditionError("profile bounds must be positive");
    std::vector<Structure> tests;
    for (auto& c : structures_up_to_iso(a.vocabulary(), max_size))
        if (!c.empty() && tree_depth(c) <= k)
            tests.push_back(std::move(c));
    const auto counts = counts_into(tests, a, parallel);
    HomProfile p;
    for (std::size_t i = 0; i < tests.size(); ++i)
        p.entries.push_back({std::move(tests[i]), counts[i]});
    return p;
}

} // namespace gc
