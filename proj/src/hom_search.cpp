#include "hom_search.hpp"

#include <algorithm>

namespace gc::detail {

namespace {
constexpr std::uint64_t dense_limit = std::uint64_t{1} << 22;
}

TupleIndex::TupleIndex(const Structure& s) : s_(&s), n_(s.size())
{
    const auto& vocab = s.vocabulary();
    dense_.resize(vocab.size());
    is_dense_.assign(vocab.size(), false);
    for (std::size_t sym = 0; sym < vocab.size(); ++sym) {
        std::uint64_t cells = 1;
        bool small = true;
        for (std::size_t i = 0; i < vocab[sym].arity && small; ++i) {
            cells *= n_;
            small = cells <= dense_limit;
        }
        if (!small)
            continue;
        is_dense_[sym] = true;
        dense_[sym].assign(cells, false);
        for (const auto& t : s.table(sym)) {
            std::uint64_t code = 0;
            for (auto e : t)
                code = code * n_ + e;
            dense_[sym][code] = true;
        }
    }
}

bool TupleIndex::holds(std::size_t symbol, const Element* entries, std::size_t arity) const
{
    if (is_dense_[symbol]) {
        std::uint64_t code = 0;
        for (std::size_t i = 0; i < arity; ++i)
            code = code * n_ + entries[i];
        return dense_[symbol][code];
    }
    return s_->holds(symbol, Tuple(entries, entries + arity));
}

HomSearch::HomSearch(const Structure& source, const Structure& target, bool injective)
    : source_(source), target_(target), injective_(injective), index_(target), by_level_(source.size())
{
    if (source.vocabulary() != target.vocabulary()) {
        feasible_ = false;
        return;
    }
    for (std::size_t s = 0; s < source.vocabulary().size(); ++s)
        for (const auto& t : source.table(s)) {
            auto level = *std::max_element(t.begin(), t.end());
            by_level_[level].push_back({s, t});
        }
}

bool HomSearch::allowed(std::size_t level, Element v) const
{
    if (source_.point() && target_.point() && level == *source_.point())
        return v == *target_.point();
    return true;
}

bool HomSearch::consistent(std::size_t level, const std::vector<Element>& img) const
{
    Element buffer[16];
    std::vector<Element> big;
    for (const auto& c : by_level_[level]) {
        const auto arity = c.tuple.size();
        Element* out = buffer;
        if (arity > 16) {
            big.resize(arity);
            out = big.data();
        }
        for (std::size_t i = 0; i < arity; ++i)
            out[i] = img[c.tuple[i]];
        if (!index_.holds(c.symbol, out, arity))
            return false;
    }
    return true;
}

template <class Visit>
bool HomSearch::descend(std::size_t level, std::vector<Element>& img, std::vector<bool>& used, Visit& visit) const
{
    if (level == source_.size())
        return visit(img);
    for (Element v = 0; v < target_.size(); ++v) {
        if (injective_ && used[v])
            continue;
        if (!allowed(level, v))
            continue;
        img[level] = v;
        if (!consistent(level, img))
            continue;
        if (injective_)
            used[v] = true;
        bool go_on = descend(level + 1, img, used, visit);
        if (injective_)
            used[v] = false;
        if (!go_on)
            return false;
    }
    return true;
}

void HomSearch::for_each(const std::function<bool(const std::vector<Element>&)>& visit) const
{
    if (!feasible_)
        return;
    std::vector<Element> img(source_.size());
    std::vector<bool> used(target_.size(), false);
    auto v = [&](const std::vector<Element>& i) { return visit(i); };
    descend(0, img, used, v);
}

std::uint64_t HomSearch::count() const
{
    if (!feasible_)
        return 0;
    std::uint64_t total = 0;
    std::vector<Element> img(source_.size());
    std::vector<bool> used(target_.size(), false);
    auto v = [&](const std::vector<Element>&) {
        ++total;
        return true;
    };
    descend(0, img, used, v);
    return total;
}

std::uint64_t HomSearch::count_from(Element v) const
{
    if (!feasible_ || source_.size() == 0 || !allowed(0, v))
        return 0;
    std::vector<Element> img(source_.size());
    std::vector<bool> used(target_.size(), false);
    img[0] = v;
    if (!consistent(0, img))
        return 0;
    if (injective_)
        used[v] = true;
    std::uint64_t total = 0;
    auto visit = [&](const std::vector<Element>&) {
        ++total;
        return true;
    };
    descend(1, img, used, visit);
    return total;
}

} // namespace gc::detail
