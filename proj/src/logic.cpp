#include "gc/logic.hpp"

#include "gc/errors.hpp"
#include "gc/io.hpp"
#include "gc/modal.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <set>
#include <tuple>
#include <unordered_map>

namespace gc {

std::string to_string(Fragment f)
{
    switch (f) {
    case Fragment::ep:
        return "ep";
    case Fragment::full:
        return "full";
    case Fragment::count:
        return "count";
    }
    return "?";
}

std::optional<Fragment> parse_fragment(std::string_view s)
{
    if (s == "ep")
        return Fragment::ep;
    if (s == "full")
        return Fragment::full;
    if (s == "count")
        return Fragment::count;
    return std::nullopt;
}

// ---------------------------------------------------------------------------------------
// Builders

namespace fo {

namespace {
FormulaPtr make(Formula f) { return std::make_shared<const Formula>(std::move(f)); }

FormulaPtr junction(Formula::Kind kind, std::vector<FormulaPtr> fs)
{
    Formula f;
    f.kind = kind;
    for (auto& c : fs) {
        if (c->kind == kind)
            f.children.insert(f.children.end(), c->children.begin(), c->children.end());
        else
            f.children.push_back(std::move(c));
    }
    return make(std::move(f));
}

FormulaPtr quantifier(Formula::Kind kind, std::size_t n, std::string x, FormulaPtr body)
{
    Formula f;
    f.kind = kind;
    f.threshold = n;
    f.vars = {std::move(x)};
    f.children = {std::move(body)};
    return make(std::move(f));
}
} // namespace

FormulaPtr truth() { return make({}); }

FormulaPtr falsity()
{
    Formula f;
    f.kind = Formula::Kind::falsity;
    return make(std::move(f));
}

FormulaPtr atom(std::string relation, std::vector<std::string> vars)
{
    Formula f;
    f.kind = Formula::Kind::atom;
    f.relation = std::move(relation);
    f.vars = std::move(vars);
    return make(std::move(f));
}

FormulaPtr equals(std::string x, std::string y)
{
    Formula f;
    f.kind = Formula::Kind::equals;
    f.vars = {std::move(x), std::move(y)};
    return make(std::move(f));
}

FormulaPtr negate(FormulaPtr g)
{
    Formula f;
    f.kind = Formula::Kind::negation;
    f.children = {std::move(g)};
    return make(std::move(f));
}

FormulaPtr conj(std::vector<FormulaPtr> fs) { return junction(Formula::Kind::conjunction, std::move(fs)); }
FormulaPtr disj(std::vector<FormulaPtr> fs) { return junction(Formula::Kind::disjunction, std::move(fs)); }
FormulaPtr exists(std::string x, FormulaPtr f) { return quantifier(Formula::Kind::exists, 0, std::move(x), std::move(f)); }
FormulaPtr forall(std::string x, FormulaPtr f) { return quantifier(Formula::Kind::forall, 0, std::move(x), std::move(f)); }
FormulaPtr at_least(std::size_t n, std::string x, FormulaPtr f)
{
    return quantifier(Formula::Kind::at_least, n, std::move(x), std::move(f));
}

} // namespace fo

// ---------------------------------------------------------------------------------------
// Measures

using K = Formula::Kind;

std::size_t quantifier_rank(const Formula& f)
{
    std::size_t r = 0;
    for (const auto& c : f.children)
        r = std::max(r, quantifier_rank(*c));
    if (f.kind == K::exists || f.kind == K::forall || f.kind == K::at_least)
        ++r;
    return r;
}

std::size_t formula_size(const Formula& f)
{
    std::size_t s = 0;
    for (const auto& c : f.children)
        s += formula_size(*c);
    if (f.kind == K::conjunction || f.kind == K::disjunction)
        return s + (f.children.empty() ? 1 : f.children.size() - 1);
    return s + 1;
}

bool in_fragment(const Formula& f, Fragment fragment)
{
    switch (f.kind) {
    case K::negation:
    case K::forall:
    case K::equals:
    case K::falsity:
        if (fragment == Fragment::ep)
            return false;
        break;
    case K::at_least:
        if (fragment != Fragment::count)
            return false;
        break;
    default:
        break;
    }
    return std::all_of(f.children.begin(), f.children.end(), [&](const auto& c) { return in_fragment(*c, fragment); });
}

namespace {
void collect_free(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out)
{
    if (f.kind == K::atom || f.kind == K::equals) {
        for (const auto& v : f.vars)
            if (!bound.contains(v))
                out.insert(v);
        return;
    }
    if (f.kind == K::exists || f.kind == K::forall || f.kind == K::at_least) {
        bool fresh = bound.insert(f.vars[0]).second;
        collect_free(*f.children[0], bound, out);
        if (fresh)
            bound.erase(f.vars[0]);
        return;
    }
    for (const auto& c : f.children)
        collect_free(*c, bound, out);
}
} // namespace

std::vector<std::string> free_variables(const Formula& f)
{
    std::set<std::string> bound, out;
    collect_free(f, bound, out);
    return {out.begin(), out.end()};
}

// ---------------------------------------------------------------------------------------
// S-expressions

namespace {

struct SExpr {
    std::string atom;
    std::vector<SExpr> list;
    bool is_list = false;
    std::size_t column = 1;
};

class SExprParser {
public:
    explicit SExprParser(std::string_view text) : text_(text) {}

    SExpr parse_all()
    {
        auto e = parse();
        skip_space();
        if (pos_ < text_.size())
            fail("unexpected trailing input");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(1, pos_ + 1, msg); }

    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    SExpr parse()
    {
        skip_space();
        if (pos_ >= text_.size())
            fail("unexpected end of formula");
        SExpr e;
        e.column = pos_ + 1;
        if (text_[pos_] == '(') {
            ++pos_;
            e.is_list = true;
            for (;;) {
                skip_space();
                if (pos_ >= text_.size())
                    fail("missing ')'");
                if (text_[pos_] == ')') {
                    ++pos_;
                    break;
                }
                e.list.push_back(parse());
            }
            if (e.list.empty())
                throw ParseError(1, e.column, "empty list");
            return e;
        }
        if (text_[pos_] == ')')
            fail("unexpected ')'");
        const auto start = pos_;
        while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) && text_[pos_] != '(' &&
               text_[pos_] != ')')
            ++pos_;
        e.atom = std::string(text_.substr(start, pos_ - start));
        return e;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

[[noreturn]] void bad(const SExpr& e, const std::string& msg) { throw ParseError(1, e.column, msg); }

const std::string& atom_of(const SExpr& e, const char* what)
{
    if (e.is_list)
        bad(e, std::string("expected ") + what);
    return e.atom;
}

std::string variable_of(const SExpr& e)
{
    const auto& v = atom_of(e, "a variable");
    if (!is_identifier(v))
        bad(e, "invalid variable '" + v + "'");
    return v;
}

std::size_t number_of(const SExpr& e)
{
    const auto& s = atom_of(e, "a number");
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) ||
        s.size() > 9)
        bad(e, "invalid number '" + s + "'");
    return std::stoul(s);
}

void arity(const SExpr& e, std::size_t n)
{
    if (e.list.size() != n + 1)
        bad(e, "'" + e.list[0].atom + "' takes " + std::to_string(n) + " argument(s)");
}

FormulaPtr to_formula(const SExpr& e)
{
    if (!e.is_list) {
        if (e.atom == "true")
            return fo::truth();
        if (e.atom == "false")
            return fo::falsity();
        bad(e, "unexpected token '" + e.atom + "'");
    }
    const auto& head = atom_of(e.list[0], "an operator");
    if (head == "not") {
        arity(e, 1);
        return fo::negate(to_formula(e.list[1]));
    }
    if (head == "and" || head == "or") {
        if (e.list.size() < 2)
            bad(e, "'" + head + "' needs an operand");
        Formula f;
        f.kind = head == "and" ? K::conjunction : K::disjunction;
        for (std::size_t i = 1; i < e.list.size(); ++i)
            f.children.push_back(to_formula(e.list[i]));
        return std::make_shared<const Formula>(std::move(f));
    }
    if (head == "exists" || head == "forall") {
        arity(e, 2);
        auto x = variable_of(e.list[1]);
        auto body = to_formula(e.list[2]);
        return head == "exists" ? fo::exists(x, body) : fo::forall(x, body);
    }
    if (head == "geq") {
        arity(e, 3);
        auto n = number_of(e.list[1]);
        if (n == 0)
            bad(e.list[1], "counting threshold must be at least 1");
        return fo::at_least(n, variable_of(e.list[2]), to_formula(e.list[3]));
    }
    if (head == "=") {
        arity(e, 2);
        return fo::equals(variable_of(e.list[1]), variable_of(e.list[2]));
    }
    if (!is_relation_name(head))
        bad(e.list[0], "invalid relation name '" + head + "'");
    if (e.list.size() < 2)
        bad(e, "relation atom without arguments");
    std::vector<std::string> vars;
    for (std::size_t i = 1; i < e.list.size(); ++i)
        vars.push_back(variable_of(e.list[i]));
    return fo::atom(head, std::move(vars));
}

void print(const Formula& f, std::string& out)
{
    auto children = [&](const char* head) {
        out += "(";
        out += head;
        for (const auto& c : f.children) {
            out += ' ';
            print(*c, out);
        }
        out += ")";
    };
    switch (f.kind) {
    case K::truth:
        out += "true";
        return;
    case K::falsity:
        out += "false";
        return;
    case K::atom:
        out += "(" + f.relation;
        for (const auto& v : f.vars)
            out += " " + v;
        out += ")";
        return;
    case K::equals:
        out += "(= " + f.vars[0] + " " + f.vars[1] + ")";
        return;
    case K::negation:
        children("not");
        return;
    case K::conjunction:
        children("and");
        return;
    case K::disjunction:
        children("or");
        return;
    case K::exists:
    case K::forall:
        out += f.kind == K::exists ? "(exists " : "(forall ";
        out += f.vars[0] + " ";
        print(*f.children[0], out);
        out += ")";
        return;
    case K::at_least:
        out += "(geq " + std::to_string(f.threshold) + " " + f.vars[0] + " ";
        print(*f.children[0], out);
        out += ")";
        return;
    }
}

} // namespace

std::string to_sexpr(const Formula& f)
{
    std::string out;
    print(f, out);
    return out;
}

FormulaPtr parse_formula(std::string_view text) { return to_formula(SExprParser(text).parse_all()); }

// ---------------------------------------------------------------------------------------
// Evaluation

namespace {

bool eval_rec(const Formula& f, const Structure& a, Assignment& g)
{
    auto value = [&](const std::string& v) {
        auto it = g.find(v);
        if (it == g.end())
            throw PreconditionError("unassigned variable '" + v + "'");
        return it->second;
    };
    auto bind = [&](const std::string& x, Element e, const auto& body) {
        auto old = g.find(x);
        std::optional<Element> saved;
        if (old != g.end())
            saved = old->second;
        g[x] = e;
        bool r = body();
        if (saved)
            g[x] = *saved;
        else
            g.erase(x);
        return r;
    };
    switch (f.kind) {
    case K::truth:
        return true;
    case K::falsity:
        return false;
    case K::atom: {
        auto r = a.vocabulary().find(f.relation);
        if (!r)
            throw PreconditionError("unknown relation '" + f.relation + "'");
        if (a.vocabulary()[*r].arity != f.vars.size())
            throw PreconditionError("relation '" + f.relation + "' has arity " +
                                    std::to_string(a.vocabulary()[*r].arity));
        Tuple t;
        for (const auto& v : f.vars)
            t.push_back(value(v));
        return a.holds(*r, t);
    }
    case K::equals:
        return value(f.vars[0]) == value(f.vars[1]);
    case K::negation:
        return !eval_rec(*f.children[0], a, g);
    case K::conjunction:
        for (const auto& c : f.children)
            if (!eval_rec(*c, a, g))
                return false;
        return true;
    case K::disjunction:
        for (const auto& c : f.children)
            if (eval_rec(*c, a, g))
                return true;
        return false;
    case K::exists:
    case K::forall:
    case K::at_least: {
        std::size_t hits = 0;
        for (Element e = 0; e < a.size(); ++e)
            hits += bind(f.vars[0], e, [&] { return eval_rec(*f.children[0], a, g); });
        if (f.kind == K::exists)
            return hits > 0;
        if (f.kind == K::forall)
            return hits == a.size();
        return hits >= f.threshold;
    }
    }
    return false;
}

} // namespace

bool eval_fo(const Formula& f, const Structure& a, const Assignment& assignment)
{
    Assignment g = assignment;
    return eval_rec(f, a, g);
}

std::string variable_name(std::size_t depth)
{
    static const char* names[] = {"x", "y", "z", "u", "v", "w"};
    if (depth >= 1 && depth <= 6)
        return names[depth - 1];
    return "x" + std::to_string(depth);
}

// ---------------------------------------------------------------------------------------
// Syntactic enumeration

namespace {

class SyntacticGenerator {
public:
    SyntacticGenerator(const Vocabulary& vocab, Fragment fragment, std::size_t cap)
        : vocab_(vocab), fragment_(fragment), cap_(cap)
    {
    }

    // Formulas with free variables among the first d, rank <= r, size exactly s.
    const std::vector<FormulaPtr>& gen(std::size_t d, std::size_t r, std::size_t s)
    {
        auto key = std::make_tuple(d, r, s);
        if (auto it = memo_.find(key); it != memo_.end())
            return it->second;
        std::vector<FormulaPtr> out;
        if (s == 1) {
            atoms(d, out);
        } else {
            if (fragment_ != Fragment::ep)
                for (const auto& f : gen(d, r, s - 1))
                    out.push_back(fo::negate(f));
            if (r >= 1) {
                const auto x = variable_name(d + 1);
                for (const auto& f : gen(d + 1, r - 1, s - 1)) {
                    out.push_back(fo::exists(x, f));
                    if (fragment_ != Fragment::ep)
                        out.push_back(fo::forall(x, f));
                    if (fragment_ == Fragment::count)
                        for (std::size_t n = 2; n <= cap_; ++n)
                            out.push_back(fo::at_least(n, x, f));
                }
            }
            junctions(d, r, s, K::conjunction, out);
            junctions(d, r, s, K::disjunction, out);
        }
        return memo_.emplace(key, std::move(out)).first->second;
    }

private:
    void atoms(std::size_t d, std::vector<FormulaPtr>& out)
    {
        for (const auto& sym : vocab_.symbols()) {
            std::vector<std::size_t> idx(sym.arity, 1);
            if (d == 0)
                continue;
            for (;;) {
                std::vector<std::string> vars;
                for (auto i : idx)
                    vars.push_back(variable_name(i));
                out.push_back(fo::atom(sym.name, vars));
                // first argument varies fastest
                std::size_t p = 0;
                while (p < sym.arity && idx[p] == d)
                    idx[p++] = 1;
                if (p == sym.arity)
                    break;
                ++idx[p];
            }
        }
        if (fragment_ != Fragment::ep)
            for (std::size_t i = 1; i <= d; ++i)
                for (std::size_t j = i + 1; j <= d; ++j)
                    out.push_back(fo::equals(variable_name(i), variable_name(j)));
        if (d >= 1)
            out.push_back(fo::truth());
    }

    // Operands strictly increasing in (size, position); operands are never of the same kind.
    void junctions(std::size_t d, std::size_t r, std::size_t s, K kind, std::vector<FormulaPtr>& out)
    {
        std::vector<FormulaPtr> chosen;
        std::function<void(std::size_t, std::size_t, std::size_t)> rec = [&](std::size_t budget, std::size_t min_size,
                                                                             std::size_t min_pos) {
            if (budget == 0 && chosen.size() >= 2) {
                Formula f;
                f.kind = kind;
                f.children = chosen;
                out.push_back(std::make_shared<const Formula>(std::move(f)));
                return;
            }
            const std::size_t cost = chosen.empty() ? 0 : 1;
            for (std::size_t sz = min_size; sz + cost <= budget && sz < s; ++sz) {
                const auto& pool = gen(d, r, sz);
                for (std::size_t p = sz == min_size ? min_pos : 0; p < pool.size(); ++p) {
                    if (pool[p]->kind == kind)
                        continue;
                    chosen.push_back(pool[p]);
                    rec(budget - sz - cost, sz, p + 1);
                    chosen.pop_back();
                }
            }
        };
        if (s >= 3)
            rec(s, 1, 0);
    }

    const Vocabulary& vocab_;
    Fragment fragment_;
    std::size_t cap_;
    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::vector<FormulaPtr>> memo_;
};

} // namespace

void enumerate_sentences(const Vocabulary& vocab, Fragment fragment, std::size_t k, std::size_t size_bound,
                         const std::function<bool(const FormulaPtr&)>& visit, std::size_t threshold_cap)
{
    SyntacticGenerator g(vocab, fragment, threshold_cap);
    for (std::size_t s = 1; s <= size_bound; ++s)
        for (const auto& f : g.gen(0, k, s))
            if (!visit(f))
                return;
}

// ---------------------------------------------------------------------------------------
// Semantic enumeration

namespace {

using Bits = std::vector<std::uint64_t>;

struct BitsHash {
    std::size_t operator()(const Bits& b) const noexcept
    {
        std::uint64_t h = 1469598103934665603ull;
        for (auto w : b) {
            h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

inline bool test_bit(const Bits& b, std::size_t i) { return (b[i >> 6] >> (i & 63)) & 1u; }
inline void set_bit(Bits& b, std::size_t i) { b[i >> 6] |= std::uint64_t{1} << (i & 63); }

struct Layer {
    std::vector<std::size_t> offset; // per world
    std::vector<std::size_t> count;  // assignments per world
    std::size_t bits = 0;
    std::size_t words = 0;
    Bits mask;
};

struct ClassTable {
    std::vector<FormulaPtr> formula;
    std::vector<Bits> bits;
    std::vector<std::vector<std::size_t>> by_size; // size -> class ids
    std::unordered_map<Bits, std::size_t, BitsHash> seen;

    bool add(FormulaPtr f, Bits b, std::size_t size)
    {
        if (seen.contains(b))
            return false;
        seen.emplace(b, formula.size());
        if (by_size.size() <= size)
            by_size.resize(size + 1);
        by_size[size].push_back(formula.size());
        formula.push_back(std::move(f));
        bits.push_back(std::move(b));
        return true;
    }
};

std::size_t ipow(std::size_t n, std::size_t d)
{
    std::size_t r = 1;
    for (std::size_t i = 0; i < d; ++i)
        r *= n;
    return r;
}

} // namespace

SemanticEnumerator::SemanticEnumerator(std::vector<const Structure*> worlds, Fragment fragment, std::size_t k,
                                       std::size_t size_bound, const EnumeratorOptions& options)
{
    if (worlds.empty())
        return;
    const auto& vocab = worlds[0]->vocabulary();
    for (const auto* w : worlds)
        if (w->vocabulary() != vocab)
            throw PreconditionError("enumerator worlds must share a vocabulary");
    std::size_t max_size = 0;
    for (const auto* w : worlds)
        max_size = std::max(max_size, w->size());
    const std::size_t cap = options.threshold_cap.value_or(max_size + 1);

    std::vector<Layer> layers(k + 1);
    for (std::size_t d = 0; d <= k; ++d) {
        auto& L = layers[d];
        for (const auto* w : worlds) {
            L.offset.push_back(L.bits);
            L.count.push_back(ipow(w->size(), d));
            L.bits += L.count.back();
        }
        L.words = (L.bits + 63) / 64;
        L.mask.assign(L.words, 0);
        for (std::size_t i = 0; i < L.bits; ++i)
            set_bit(L.mask, i);
    }
    std::vector<ClassTable> table(k + 1);

    auto atom_bits = [&](std::size_t d, const std::function<bool(const Structure&, const std::vector<Element>&)>& holds) {
        const auto& L = layers[d];
        Bits b(L.words, 0);
        std::vector<Element> g(d);
        for (std::size_t j = 0; j < worlds.size(); ++j) {
            const auto n = worlds[j]->size();
            for (std::size_t a = 0; a < L.count[j]; ++a) {
                auto rest = a;
                for (std::size_t i = d; i-- > 0;) {
                    g[i] = static_cast<Element>(rest % n);
                    rest /= n;
                }
                if (holds(*worlds[j], g))
                    set_bit(b, L.offset[j] + a);
            }
        }
        return b;
    };

    // Quantifier over variable d+1: child bits at depth d+1, result at depth d.
    auto quantify = [&](std::size_t d, const Bits& child, K kind, std::size_t n_threshold) {
        const auto& L = layers[d];
        const auto& C = layers[d + 1];
        Bits b(L.words, 0);
        for (std::size_t j = 0; j < worlds.size(); ++j) {
            const auto n = worlds[j]->size();
            for (std::size_t a = 0; a < L.count[j]; ++a) {
                std::size_t hits = 0;
                for (std::size_t e = 0; e < n; ++e)
                    hits += test_bit(child, C.offset[j] + a * n + e);
                bool v = kind == K::exists ? hits > 0 : kind == K::forall ? hits == n : hits >= n_threshold;
                if (v)
                    set_bit(b, L.offset[j] + a);
            }
        }
        return b;
    };

    for (std::size_t s = 1; s <= size_bound; ++s) {
        for (std::size_t d = k + 1; d-- > 0;) {
            auto& T = table[d];
            const auto& L = layers[d];
            if (s == 1) {
                if (d >= 1) {
                    for (std::size_t r = 0; r < vocab.size(); ++r) {
                        const auto ar = vocab[r].arity;
                        std::vector<std::size_t> idx(ar, 0);
                        for (;;) {
                            std::vector<std::string> vars;
                            for (auto i : idx)
                                vars.push_back(variable_name(i + 1));
                            auto b = atom_bits(d, [&](const Structure& w, const std::vector<Element>& g) {
                                Tuple t;
                                for (auto i : idx)
                                    t.push_back(g[i]);
                                return w.holds(r, t);
                            });
                            T.add(fo::atom(vocab[r].name, vars), std::move(b), 1);
                            std::size_t p = 0;
                            while (p < ar && idx[p] + 1 == d)
                                idx[p++] = 0;
                            if (p == ar)
                                break;
                            ++idx[p];
                        }
                    }
                    if (fragment != Fragment::ep)
                        for (std::size_t i = 0; i < d; ++i)
                            for (std::size_t j = i + 1; j < d; ++j)
                                T.add(fo::equals(variable_name(i + 1), variable_name(j + 1)),
                                      atom_bits(d, [&](const Structure&, const std::vector<Element>& g) { return g[i] == g[j]; }), 1);
                    T.add(fo::truth(), L.mask, 1);
                }
                continue;
            }
            if (fragment != Fragment::ep && s - 1 < T.by_size.size()) {
                const auto ids = T.by_size[s - 1];
                for (auto c : ids) {
                    Bits b(L.words);
                    for (std::size_t w = 0; w < L.words; ++w)
                        b[w] = ~T.bits[c][w] & L.mask[w];
                    T.add(fo::negate(T.formula[c]), std::move(b), s);
                }
            }
            if (d < k && s - 1 < table[d + 1].by_size.size()) {
                const auto& C = table[d + 1];
                const auto x = variable_name(d + 1);
                for (auto c : C.by_size[s - 1]) {
                    T.add(fo::exists(x, C.formula[c]), quantify(d, C.bits[c], K::exists, 0), s);
                    if (fragment != Fragment::ep)
                        T.add(fo::forall(x, C.formula[c]), quantify(d, C.bits[c], K::forall, 0), s);
                    if (fragment == Fragment::count)
                        for (std::size_t n = 2; n <= cap; ++n)
                            T.add(fo::at_least(n, x, C.formula[c]), quantify(d, C.bits[c], K::at_least, n), s);
                }
            }
            // binary and/or: sizes s1 + s2 + 1 = s, s1 <= s2
            for (std::size_t s1 = 1; s1 + s1 + 1 <= s; ++s1) {
                const std::size_t s2 = s - 1 - s1;
                if (s2 >= T.by_size.size())
                    continue;
                const auto lhs = T.by_size[s1];
                const auto rhs = T.by_size[s2];
                struct Candidate {
                    std::size_t j;
                    bool conj;
                    Bits bits;
                };
                std::vector<std::vector<Candidate>> found(lhs.size());
                const auto n_lhs = static_cast<long long>(lhs.size());
#pragma omp parallel for schedule(dynamic, 4) if (options.parallel)
                for (long long ii = 0; ii < n_lhs; ++ii) {
                    const auto i = static_cast<std::size_t>(ii);
                    const auto& a = T.bits[lhs[i]];
                    std::unordered_map<Bits, bool, BitsHash> local;
                    Bits b(L.words);
                    for (std::size_t jj = s1 == s2 ? i + 1 : 0; jj < rhs.size(); ++jj) {
                        const auto& c = T.bits[rhs[jj]];
                        for (int op = 0; op < 2; ++op) {
                            for (std::size_t w = 0; w < L.words; ++w)
                                b[w] = op == 0 ? (a[w] & c[w]) : (a[w] | c[w]);
                            if (T.seen.contains(b) || local.contains(b))
                                continue;
                            local.emplace(b, true);
                            found[i].push_back({jj, op == 0, b});
                        }
                    }
                }
                for (std::size_t i = 0; i < lhs.size(); ++i)
                    for (auto& cand : found[i]) {
                        const auto& f1 = T.formula[lhs[i]];
                        const auto& f2 = T.formula[rhs[cand.j]];
                        auto f = cand.conj ? fo::conj({f1, f2}) : fo::disj({f1, f2});
                        T.add(std::move(f), std::move(cand.bits), s);
                    }
            }
        }
    }

    const auto& top = table[0];
    class_count_ = 0;
    for (const auto& t : table)
        class_count_ += t.formula.size();
    for (std::size_t s = 0; s < top.by_size.size(); ++s)
        for (auto c : top.by_size[s]) {
            Sentence sent;
            sent.formula = top.formula[c];
            sent.size = s;
            for (std::size_t j = 0; j < worlds.size(); ++j)
                sent.truth.push_back(test_bit(top.bits[c], layers[0].offset[j]));
            sentences_.push_back(std::move(sent));
        }
}

std::optional<FormulaPtr> SemanticEnumerator::separator(std::size_t i, std::size_t j) const
{
    for (const auto& s : sentences_)
        if (s.truth[i] && !s.truth[j])
            return s.formula;
    return std::nullopt;
}

std::optional<FormulaPtr> find_separator(const Structure& a, const Structure& b, std::size_t k, Fragment fragment,
                                         std::size_t size_bound, const EnumeratorOptions& options)
{
    SemanticEnumerator e({&a, &b}, fragment, k, size_bound, options);
    return e.separator(0, 1);
}

// ---------------------------------------------------------------------------------------
// Rank-k types

namespace {

// Atomic facts of the tuple encoded by `code` (length d over s), as a bit vector.
std::vector<bool> facts(const Structure& s, std::size_t code, std::size_t d, bool with_equality)
{
    const auto n = s.size();
    std::vector<Element> g(d);
    for (std::size_t i = d; i-- > 0;) {
        g[i] = static_cast<Element>(code % n);
        code /= n;
    }
    std::vector<bool> out;
    const auto& v = s.vocabulary();
    for (std::size_t r = 0; r < v.size(); ++r) {
        const auto ar = v[r].arity;
        const auto slots = ipow(d, ar);
        for (std::size_t m = 0; m < slots; ++m) {
            Tuple t(ar);
            auto rest = m;
            for (std::size_t i = ar; i-- > 0;) {
                t[i] = g[rest % d];
                rest /= d;
            }
            out.push_back(s.holds(r, t));
        }
    }
    if (with_equality)
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = i + 1; j < d; ++j)
                out.push_back(g[i] == g[j]);
    return out;
}

void guard(std::size_t n, std::size_t k)
{
    double total = 1;
    for (std::size_t i = 0; i < k; ++i)
        total *= static_cast<double>(n);
    if (total > 2e7)
        throw PreconditionError("rank-" + std::to_string(k) + " type computation too large for " + std::to_string(n) +
                                " elements");
}

} // namespace

bool rank_k_equiv(const Structure& a, const Structure& b, std::size_t k, Fragment fragment)
{
    if (a.vocabulary() != b.vocabulary())
        throw PreconditionError("structures over different vocabularies");
    guard(std::max(a.size(), b.size()), k);
    const auto na = a.size(), nb = b.size();

    if (fragment == Fragment::ep) {
        // next[ia * |B|^d + ib] for tuples of length d + 1
        std::vector<char> next;
        for (std::size_t d = k + 1; d-- > 0;) {
            const auto ca = ipow(na, d), cb = ipow(nb, d);
            std::vector<char> cur(ca * cb, 0);
            const auto cb1 = ipow(nb, d + 1);
            for (std::size_t ia = 0; ia < ca; ++ia) {
                const auto fa = facts(a, ia, d, false);
                for (std::size_t ib = 0; ib < cb; ++ib) {
                    const auto fb = facts(b, ib, d, false);
                    bool ok = true;
                    for (std::size_t i = 0; ok && i < fa.size(); ++i)
                        ok = !fa[i] || fb[i];
                    if (ok && d < k)
                        for (Element x = 0; ok && x < na; ++x) {
                            bool any = false;
                            for (Element y = 0; !any && y < nb; ++y)
                                any = next[(ia * na + x) * cb1 + ib * nb + y];
                            ok = any;
                        }
                    cur[ia * cb + ib] = ok;
                }
            }
            next = std::move(cur);
        }
        return next[0];
    }

    const bool multiset = fragment == Fragment::count;
    std::vector<int> next_a, next_b;
    for (std::size_t d = k + 1; d-- > 0;) {
        std::map<std::pair<std::vector<bool>, std::vector<int>>, int> intern;
        auto type_of = [&](const Structure& s, std::size_t code, const std::vector<int>& next) {
            const auto n = s.size();
            std::vector<int> kids;
            if (d < k) {
                for (Element x = 0; x < n; ++x)
                    kids.push_back(next[code * n + x]);
                std::sort(kids.begin(), kids.end());
                if (!multiset)
                    kids.erase(std::unique(kids.begin(), kids.end()), kids.end());
            }
            auto key = std::make_pair(facts(s, code, d, true), std::move(kids));
            return intern.emplace(std::move(key), static_cast<int>(intern.size())).first->second;
        };
        std::vector<int> cur_a(ipow(na, d)), cur_b(ipow(nb, d));
        for (std::size_t i = 0; i < cur_a.size(); ++i)
            cur_a[i] = type_of(a, i, next_a);
        for (std::size_t i = 0; i < cur_b.size(); ++i)
            cur_b[i] = type_of(b, i, next_b);
        next_a = std::move(cur_a);
        next_b = std::move(cur_b);
    }
    return next_a[0] == next_b[0];
}

// ---------------------------------------------------------------------------------------
// Modal formulas

using MK = ModalFormula::Kind;

namespace ml {

namespace {
ModalPtr make(ModalFormula f) { return std::make_shared<const ModalFormula>(std::move(f)); }
ModalPtr junction(MK kind, std::vector<ModalPtr> fs)
{
    ModalFormula f;
    f.kind = kind;
    for (auto& c : fs) {
        if (c->kind == kind)
            f.children.insert(f.children.end(), c->children.begin(), c->children.end());
        else
            f.children.push_back(std::move(c));
    }
    return make(std::move(f));
}
ModalPtr modality(MK kind, std::size_t n, std::string r, ModalPtr body)
{
    ModalFormula f;
    f.kind = kind;
    f.threshold = n;
    f.name = std::move(r);
    f.children = {std::move(body)};
    return make(std::move(f));
}
} // namespace

ModalPtr truth() { return make({}); }
ModalPtr falsity()
{
    ModalFormula f;
    f.kind = MK::falsity;
    return make(std::move(f));
}
ModalPtr prop(std::string p)
{
    ModalFormula f;
    f.kind = MK::prop;
    f.name = std::move(p);
    return make(std::move(f));
}
ModalPtr negate(ModalPtr g)
{
    ModalFormula f;
    f.kind = MK::negation;
    f.children = {std::move(g)};
    return make(std::move(f));
}
ModalPtr conj(std::vector<ModalPtr> fs) { return junction(MK::conjunction, std::move(fs)); }
ModalPtr disj(std::vector<ModalPtr> fs) { return junction(MK::disjunction, std::move(fs)); }
ModalPtr dia(std::string r, ModalPtr f) { return modality(MK::diamond, 1, std::move(r), std::move(f)); }
ModalPtr box(std::string r, ModalPtr f) { return modality(MK::box, 0, std::move(r), std::move(f)); }
ModalPtr gdia(std::size_t n, std::string r, ModalPtr f) { return modality(MK::graded, n, std::move(r), std::move(f)); }

} // namespace ml

std::size_t modal_depth(const ModalFormula& f)
{
    std::size_t r = 0;
    for (const auto& c : f.children)
        r = std::max(r, modal_depth(*c));
    if (f.kind == MK::diamond || f.kind == MK::box || f.kind == MK::graded)
        ++r;
    return r;
}

std::size_t formula_size(const ModalFormula& f)
{
    std::size_t s = 0;
    for (const auto& c : f.children)
        s += formula_size(*c);
    if (f.kind == MK::conjunction || f.kind == MK::disjunction)
        return s + (f.children.empty() ? 1 : f.children.size() - 1);
    return s + 1;
}

namespace {

void print(const ModalFormula& f, std::string& out)
{
    auto children = [&](const std::string& head) {
        out += "(" + head;
        for (const auto& c : f.children) {
            out += ' ';
            print(*c, out);
        }
        out += ")";
    };
    switch (f.kind) {
    case MK::truth:
        out += "true";
        return;
    case MK::falsity:
        out += "false";
        return;
    case MK::prop:
        out += f.name;
        return;
    case MK::negation:
        children("not");
        return;
    case MK::conjunction:
        children("and");
        return;
    case MK::disjunction:
        children("or");
        return;
    case MK::diamond:
        children("dia " + f.name);
        return;
    case MK::box:
        children("box " + f.name);
        return;
    case MK::graded:
        children("gdia " + std::to_string(f.threshold) + " " + f.name);
        return;
    }
}

std::string relation_of(const SExpr& e)
{
    const auto& r = atom_of(e, "a relation");
    if (!is_relation_name(r))
        bad(e, "invalid relation name '" + r + "'");
    return r;
}

ModalPtr to_modal(const SExpr& e)
{
    if (!e.is_list) {
        if (e.atom == "true")
            return ml::truth();
        if (e.atom == "false")
            return ml::falsity();
        if (!is_relation_name(e.atom))
            bad(e, "invalid proposition '" + e.atom + "'");
        return ml::prop(e.atom);
    }
    const auto& head = atom_of(e.list[0], "an operator");
    if (head == "not") {
        arity(e, 1);
        return ml::negate(to_modal(e.list[1]));
    }
    if (head == "and" || head == "or") {
        if (e.list.size() < 2)
            bad(e, "'" + head + "' needs an operand");
        ModalFormula f;
        f.kind = head == "and" ? MK::conjunction : MK::disjunction;
        for (std::size_t i = 1; i < e.list.size(); ++i)
            f.children.push_back(to_modal(e.list[i]));
        return std::make_shared<const ModalFormula>(std::move(f));
    }
    if (head == "dia" || head == "box") {
        arity(e, 2);
        auto r = relation_of(e.list[1]);
        auto body = to_modal(e.list[2]);
        return head == "dia" ? ml::dia(r, body) : ml::box(r, body);
    }
    if (head == "gdia") {
        arity(e, 3);
        auto n = number_of(e.list[1]);
        if (n == 0)
            bad(e.list[1], "counting threshold must be at least 1");
        return ml::gdia(n, relation_of(e.list[2]), to_modal(e.list[3]));
    }
    bad(e.list[0], "unknown modal operator '" + head + "'");
}

std::size_t symbol_of(const Structure& k, const std::string& name, std::size_t arity)
{
    auto r = k.vocabulary().find(name);
    if (!r)
        throw PreconditionError("unknown symbol '" + name + "'");
    if (k.vocabulary()[*r].arity != arity)
        throw PreconditionError("symbol '" + name + "' has arity " + std::to_string(k.vocabulary()[*r].arity) +
                                ", expected " + std::to_string(arity));
    return *r;
}

bool eval_modal_at(const ModalFormula& f, const Structure& k, Element s)
{
    switch (f.kind) {
    case MK::truth:
        return true;
    case MK::falsity:
        return false;
    case MK::prop:
        return k.holds(symbol_of(k, f.name, 1), {s});
    case MK::negation:
        return !eval_modal_at(*f.children[0], k, s);
    case MK::conjunction:
        for (const auto& c : f.children)
            if (!eval_modal_at(*c, k, s))
                return false;
        return true;
    case MK::disjunction:
        for (const auto& c : f.children)
            if (eval_modal_at(*c, k, s))
                return true;
        return false;
    case MK::diamond:
    case MK::box:
    case MK::graded: {
        const auto succ = successors(k, symbol_of(k, f.name, 2), s);
        std::size_t hits = 0;
        for (auto t : succ)
            hits += eval_modal_at(*f.children[0], k, t);
        if (f.kind == MK::box)
            return hits == succ.size();
        return hits >= std::max<std::size_t>(f.threshold, 1);
    }
    }
    return false;
}

} // namespace

std::string to_sexpr(const ModalFormula& f)
{
    std::string out;
    print(f, out);
    return out;
}

ModalPtr parse_modal_formula(std::string_view text) { return to_modal(SExprParser(text).parse_all()); }

bool eval_modal(const ModalFormula& f, const Structure& k, std::optional<Element> state)
{
    auto s = state ? state : k.point();
    if (!s)
        throw PreconditionError("modal evaluation needs a point or an explicit state");
    if (*s >= k.size())
        throw PreconditionError("state out of range");
    return eval_modal_at(f, k, *s);
}

// ---------------------------------------------------------------------------------------
// Graded distinguishing formulas

namespace {

class GradedTypes {
public:
    GradedTypes(const Structure& k1, const Structure& k2, std::size_t depth) : worlds_{&k1, &k2}
    {
        const auto& v = k1.vocabulary();
        for (std::size_t r = 0; r < v.size(); ++r)
            (v[r].arity == 1 ? props_ : rels_).push_back(r);
        types_.resize(depth + 1);
        for (std::size_t d = 0; d <= depth; ++d) {
            std::map<std::vector<int>, int> intern;
            for (int w = 0; w < 2; ++w) {
                types_[d][w].resize(worlds_[w]->size());
                for (Element s = 0; s < worlds_[w]->size(); ++s) {
                    std::vector<int> key;
                    for (auto p : props_)
                        key.push_back(worlds_[w]->holds(p, {s}));
                    if (d > 0)
                        for (auto r : rels_) {
                            key.push_back(-1);
                            auto kids = successors(*worlds_[w], r, s);
                            std::vector<int> ts;
                            for (auto t : kids)
                                ts.push_back(types_[d - 1][w][t]);
                            std::sort(ts.begin(), ts.end());
                            key.insert(key.end(), ts.begin(), ts.end());
                        }
                    types_[d][w][s] = intern.emplace(key, static_cast<int>(intern.size())).first->second;
                }
            }
        }
    }

    struct State {
        int world;
        Element s;
    };

    int type(std::size_t d, State x) const { return types_[d][x.world][x.s]; }

    // Formula of depth <= d true at x and false at y; requires different d-types.
    ModalPtr distinguish(State x, State y, std::size_t d) const
    {
        const auto& vx = *worlds_[x.world];
        const auto& vy = *worlds_[y.world];
        for (auto p : props_) {
            bool px = vx.holds(p, {x.s}), py = vy.holds(p, {y.s});
            if (px != py) {
                auto atom = ml::prop(vx.vocabulary()[p].name);
                return px ? atom : ml::negate(atom);
            }
        }
        if (d == 0)
            throw InvariantError("graded types differ without a distinguishing proposition");
        for (auto r : rels_) {
            std::vector<State> sx, sy;
            for (auto t : successors(vx, r, x.s))
                sx.push_back({x.world, t});
            for (auto t : successors(vy, r, y.s))
                sy.push_back({y.world, t});
            std::map<int, std::pair<std::size_t, std::size_t>> counts;
            std::map<int, State> witness;
            for (auto t : sx) {
                ++counts[type(d - 1, t)].first;
                witness.emplace(type(d - 1, t), t);
            }
            for (auto t : sy) {
                ++counts[type(d - 1, t)].second;
                witness.emplace(type(d - 1, t), t);
            }
            for (const auto& [t, c] : counts) {
                if (c.first == c.second)
                    continue;
                std::vector<ModalPtr> parts;
                std::set<int> done;
                for (const auto* side : {&sx, &sy})
                    for (auto u : *side) {
                        const int tu = type(d - 1, u);
                        if (tu == t || !done.insert(tu).second)
                            continue;
                        parts.push_back(distinguish(witness.at(t), u, d - 1));
                    }
                ModalPtr chi = parts.empty() ? ml::truth() : parts.size() == 1 ? parts[0] : ml::conj(parts);
                const auto& name = vx.vocabulary()[r].name;
                auto diamond = [&](std::size_t n) { return n == 1 ? ml::dia(name, chi) : ml::gdia(n, name, chi); };
                return c.first > c.second ? diamond(c.first) : ml::negate(diamond(c.second));
            }
        }
        throw InvariantError("graded types differ without a distinguishing successor count");
    }

private:
    std::array<const Structure*, 2> worlds_;
    std::vector<std::size_t> props_, rels_;
    std::vector<std::array<std::vector<int>, 2>> types_;
};

} // namespace

std::optional<ModalPtr> graded_distinguisher(const Structure& k1, const Structure& k2, std::size_t depth)
{
    require_kripke(k1);
    require_kripke(k2);
    if (k1.vocabulary() != k2.vocabulary())
        throw PreconditionError("Kripke structures over different vocabularies");
    GradedTypes types(k1, k2, depth);
    const GradedTypes::State x{0, *k1.point()}, y{1, *k2.point()};
    if (types.type(depth, x) == types.type(depth, y))
        return std::nullopt;
    return types.distinguish(x, y, depth);
}

ModalEnumerator::ModalEnumerator(std::vector<const Structure*> worlds, std::size_t depth, std::size_t size_bound,
                                 std::size_t threshold_cap)
{
    if (worlds.empty())
        return;
    const auto& vocab = worlds[0]->vocabulary();
    std::vector<std::size_t> offset;
    std::size_t bits = 0;
    for (const auto* w : worlds) {
        require_kripke(*w);
        if (w->vocabulary() != vocab)
            throw PreconditionError("enumerator worlds must share a vocabulary");
        offset.push_back(bits);
        bits += w->size();
    }
    const std::size_t words = (bits + 63) / 64;
    Bits mask(words, 0);
    for (std::size_t i = 0; i < bits; ++i)
        set_bit(mask, i);

    // transition relation as successor lists over global state ids
    std::vector<std::vector<std::vector<std::size_t>>> succ(vocab.size());
    for (std::size_t r = 0; r < vocab.size(); ++r) {
        if (vocab[r].arity != 2)
            continue;
        succ[r].resize(bits);
        for (std::size_t j = 0; j < worlds.size(); ++j)
            for (Element s = 0; s < worlds[j]->size(); ++s)
                for (auto t : successors(*worlds[j], r, s))
                    succ[r][offset[j] + s].push_back(offset[j] + t);
    }

    struct Table {
        std::vector<ModalPtr> formula;
        std::vector<Bits> bits;
        std::vector<std::vector<std::size_t>> by_size;
        std::unordered_map<Bits, std::size_t, BitsHash> seen;
        void add(ModalPtr f, Bits b, std::size_t size)
        {
            if (seen.contains(b))
                return;
            seen.emplace(b, formula.size());
            if (by_size.size() <= size)
                by_size.resize(size + 1);
            by_size[size].push_back(formula.size());
            formula.push_back(std::move(f));
            bits.push_back(std::move(b));
        }
    };
    std::vector<Table> table(depth + 1);

    for (std::size_t s = 1; s <= size_bound; ++s)
        for (std::size_t d = 0; d <= depth; ++d) {
            auto& T = table[d];
            if (s == 1) {
                for (std::size_t p = 0; p < vocab.size(); ++p) {
                    if (vocab[p].arity != 1)
                        continue;
                    Bits b(words, 0);
                    for (std::size_t j = 0; j < worlds.size(); ++j)
                        for (Element st = 0; st < worlds[j]->size(); ++st)
                            if (worlds[j]->holds(p, {st}))
                                set_bit(b, offset[j] + st);
                    T.add(ml::prop(vocab[p].name), std::move(b), 1);
                }
                T.add(ml::truth(), mask, 1);
                continue;
            }
            if (s - 1 < T.by_size.size()) {
                const auto ids = T.by_size[s - 1];
                for (auto c : ids) {
                    Bits b(words);
                    for (std::size_t w = 0; w < words; ++w)
                        b[w] = ~T.bits[c][w] & mask[w];
                    T.add(ml::negate(T.formula[c]), std::move(b), s);
                }
            }
            if (d >= 1 && s - 1 < table[d - 1].by_size.size()) {
                const auto& C = table[d - 1];
                for (std::size_t r = 0; r < vocab.size(); ++r) {
                    if (vocab[r].arity != 2)
                        continue;
                    for (auto c : C.by_size[s - 1]) {
                        std::vector<std::size_t> hits(bits, 0);
                        for (std::size_t st = 0; st < bits; ++st)
                            for (auto t : succ[r][st])
                                hits[st] += test_bit(C.bits[c], t);
                        for (std::size_t n = 1; n <= threshold_cap; ++n) {
                            Bits b(words, 0);
                            for (std::size_t st = 0; st < bits; ++st)
                                if (hits[st] >= n)
                                    set_bit(b, st);
                            auto f = n == 1 ? ml::dia(vocab[r].name, C.formula[c]) : ml::gdia(n, vocab[r].name, C.formula[c]);
                            T.add(std::move(f), std::move(b), s);
                        }
                    }
                }
            }
            for (std::size_t s1 = 1; s1 + s1 + 1 <= s; ++s1) {
                const std::size_t s2 = s - 1 - s1;
                if (s2 >= T.by_size.size())
                    continue;
                const auto lhs = T.by_size[s1];
                const auto rhs = T.by_size[s2];
                Bits b(words);
                for (std::size_t i = 0; i < lhs.size(); ++i)
                    for (std::size_t jj = s1 == s2 ? i + 1 : 0; jj < rhs.size(); ++jj)
                        for (int op = 0; op < 2; ++op) {
                            const auto& x = T.bits[lhs[i]];
                            const auto& y = T.bits[rhs[jj]];
                            for (std::size_t w = 0; w < words; ++w)
                                b[w] = op == 0 ? (x[w] & y[w]) : (x[w] | y[w]);
                            if (T.seen.contains(b))
                                continue;
                            auto f = op == 0 ? ml::conj({T.formula[lhs[i]], T.formula[rhs[jj]]})
                                             : ml::disj({T.formula[lhs[i]], T.formula[rhs[jj]]});
                            T.add(std::move(f), b, s);
                        }
            }
        }

    const auto& top = table[depth];
    for (std::size_t s = 0; s < top.by_size.size(); ++s)
        for (auto c : top.by_size[s]) {
            formulas_.push_back(top.formula[c]);
            std::vector<bool> at;
            for (std::size_t j = 0; j < worlds.size(); ++j)
                at.push_back(test_bit(top.bits[c], offset[j] + *worlds[j]->point()));
            at_points_.push_back(std::move(at));
        }
}

std::optional<ModalPtr> ModalEnumerator::separator(std::size_t i, std::size_t j) const
{
    for (std::size_t f = 0; f < formulas_.size(); ++f)
        if (at_points_[f][i] != at_points_[f][j])
            return at_points_[f][i] ? formulas_[f] : ml::negate(formulas_[f]);
    return std::nullopt;
}

} // namespace gc
