#include "gc/modal.hpp"

#include "gc/ef.hpp"
#include "gc/errors.hpp"

namespace gc {

bool is_kripke(const Structure& k)
{
    if (!k.point())
        return false;
    for (const auto& s : k.vocabulary().symbols())
        if (s.arity > 2)
            return false;
    return true;
}

void require_kripke(const Structure& k)
{
    if (!k.point())
        throw PreconditionError("a Kripke structure needs a point");
    for (const auto& s : k.vocabulary().symbols())
        if (s.arity > 2)
            throw PreconditionError("relation '" + s.name + "' has arity " + std::to_string(s.arity) +
                                    "; Kripke structures allow arity at most 2");
}

std::vector<Element> successors(const Structure& k, std::size_t relation, Element state)
{
    std::vector<Element> out;
    const auto& table = k.table(relation);
    for (auto it = table.lower_bound(Tuple{state, 0}); it != table.end() && (*it)[0] == state; ++it)
        out.push_back((*it)[1]);
    return out;
}

namespace {

std::string walk_name(const Structure& k, const Walk& w)
{
    std::string out = "[" + k.name(w.start);
    for (const auto& s : w.steps)
        out += "," + k.vocabulary()[s.relation].name + ":" + k.name(s.state);
    return out + "]";
}

} // namespace

Unravelling unravel(const Structure& k, std::size_t depth)
{
    require_kripke(k);
    if (depth == 0)
        throw PreconditionError("unravelling depth must be at least 1");
    const auto& vocab = k.vocabulary();
    const auto limit = materialization_limit();

    Unravelling u;
    std::vector<std::optional<Element>> parent;
    std::vector<Element> layer{0};
    u.walks.push_back({*k.point(), {}});
    parent.push_back(std::nullopt);
    for (std::size_t len = 2; len <= depth; ++len) {
        std::vector<Element> next;
        for (auto w : layer)
            for (std::size_t r = 0; r < vocab.size(); ++r) {
                if (vocab[r].arity != 2)
                    continue;
                for (auto t : successors(k, r, u.walks[w].end())) {
                    Walk ext = u.walks[w];
                    ext.steps.push_back({r, t});
                    next.push_back(static_cast<Element>(u.walks.size()));
                    u.walks.push_back(std::move(ext));
                    parent.push_back(w);
                    if (u.walks.size() > limit)
                        throw PreconditionError("unravelling exceeds GC_MAX_UNIVERSE=" + std::to_string(limit));
                }
            }
        layer = std::move(next);
    }

    Structure s(vocab);
    for (const auto& w : u.walks)
        s.add_element(walk_name(k, w));
    for (Element x = 0; x < u.walks.size(); ++x) {
        const auto& w = u.walks[x];
        for (std::size_t r = 0; r < vocab.size(); ++r)
            if (vocab[r].arity == 1 && k.holds(r, {w.end()}))
                s.add_tuple(r, {x});
        if (parent[x])
            s.add_tuple(w.steps.back().relation, {*parent[x], x});
    }
    s.set_point(0);
    u.forest = ForestStructure(std::move(s));
    u.forest.parent = std::move(parent);
    return u;
}

bool check_modal_idempotence(const Structure& k, std::size_t depth)
{
    const auto once = unravel(k, depth);
    const auto twice = unravel(once.structure(), depth);
    return canonical_forest_code(once.forest) == canonical_forest_code(twice.forest);
}

bool graded_equivalence(const Structure& k1, const Structure& k2, std::size_t depth)
{
    if (k1.vocabulary() != k2.vocabulary())
        throw PreconditionError("Kripke structures over different vocabularies");
    return canonical_forest_code(unravel(k1, depth).forest) == canonical_forest_code(unravel(k2, depth).forest);
}

} // namespace gc
