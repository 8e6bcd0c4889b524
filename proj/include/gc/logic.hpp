#pragma once

// First-order and modal formulas: syntax, s-expression format, evaluation, rank-k types and
// bounded enumeration used as an independent oracle for the game solvers.
//
// S-expressions:
//   true  false  (R x y ...)  (= x y)  (not f)  (and f ...)  (or f ...)
//   (exists x f)  (forall x f)  (geq n x f)
// Modal:
//   true  false  P  (not f)  (and f ...)  (or f ...)  (dia R f)  (box R f)  (gdia n R f)

#include "gc/structure.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gc {

/// ep: atoms (no equality), and, or, exists. full: adds equality, not, forall.
/// count: adds counting quantifiers.
enum class Fragment { ep, full, count };

std::string to_string(Fragment f);
std::optional<Fragment> parse_fragment(std::string_view s);

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
    enum class Kind { truth, falsity, atom, equals, negation, conjunction, disjunction, exists, forall, at_least };
    Kind kind = Kind::truth;
    std::string relation;            // atom
    std::vector<std::string> vars;   // atom / equals arguments; quantifiers: the bound variable
    std::size_t threshold = 0;       // at_least
    std::vector<FormulaPtr> children;
};

namespace fo {
FormulaPtr truth();
FormulaPtr falsity();
FormulaPtr atom(std::string relation, std::vector<std::string> vars);
FormulaPtr equals(std::string x, std::string y);
FormulaPtr negate(FormulaPtr f);
FormulaPtr conj(std::vector<FormulaPtr> fs);
FormulaPtr disj(std::vector<FormulaPtr> fs);
FormulaPtr exists(std::string x, FormulaPtr f);
FormulaPtr forall(std::string x, FormulaPtr f);
FormulaPtr at_least(std::size_t n, std::string x, FormulaPtr f);
} // namespace fo

std::size_t quantifier_rank(const Formula& f);
/// Node count; an n-ary and/or counts as the n - 1 binary nodes it abbreviates.
std::size_t formula_size(const Formula& f);
bool in_fragment(const Formula& f, Fragment fragment);
std::vector<std::string> free_variables(const Formula& f);

std::string to_sexpr(const Formula& f);
/// Throws ParseError (line 1, column of the offending token).
FormulaPtr parse_formula(std::string_view text);

using Assignment = std::map<std::string, Element, std::less<>>;

/// Throws PreconditionError when a variable is unassigned or an atom does not match the vocabulary.
bool eval_fo(const Formula& f, const Structure& a, const Assignment& assignment = {});

/// Canonical name of the variable bound at quantifier depth d (1-based): x, y, z, u, v, w, x7, ...
std::string variable_name(std::size_t depth);

/// Every sentence of the fragment with rank <= k and size <= size_bound, in a normal form
/// (variables named by quantifier depth, and/or operands flattened and strictly ordered,
/// `true` only under a quantifier). Each normal form is emitted exactly once.
/// Stops early when the visitor returns false.
void enumerate_sentences(const Vocabulary& vocab, Fragment fragment, std::size_t k, std::size_t size_bound,
                         const std::function<bool(const FormulaPtr&)>& visit, std::size_t threshold_cap = 3);

struct EnumeratorOptions {
    bool parallel = true;
    std::optional<std::size_t> threshold_cap; // default: largest world + 1
};

/// Formulas modulo equivalence on a fixed set of worlds. Builds, for every formula of the
/// fragment with rank <= k and size <= size_bound, the set of (world, assignment) pairs where
/// it holds; only the first (smallest) formula per truth set is kept. Since truth sets of
/// composite formulas depend only on those of their parts, every truth set reachable within
/// the bound is reached, so the sentence classes decide separability within the bound exactly.
class SemanticEnumerator {
public:
    SemanticEnumerator(std::vector<const Structure*> worlds, Fragment fragment, std::size_t k,
                       std::size_t size_bound, const EnumeratorOptions& options = {});

    struct Sentence {
        FormulaPtr formula;
        std::size_t size = 0;
        std::vector<bool> truth; // per world
    };
    const std::vector<Sentence>& sentences() const noexcept { return sentences_; }
    std::size_t class_count() const noexcept { return class_count_; }

    /// Smallest enumerated sentence true in world i and false in world j.
    std::optional<FormulaPtr> separator(std::size_t i, std::size_t j) const;

private:
    std::vector<Sentence> sentences_;
    std::size_t class_count_ = 0;
};

/// Smallest within-bound sentence of the fragment true in A and false in B.
std::optional<FormulaPtr> find_separator(const Structure& a, const Structure& b, std::size_t k, Fragment fragment,
                                         std::size_t size_bound, const EnumeratorOptions& options = {});

/// Rank-k type comparison. full: back-and-forth type equality; count: same with multisets;
/// ep: the forth-only preorder (directed: every ep sentence of rank k true in A holds in B).
bool rank_k_equiv(const Structure& a, const Structure& b, std::size_t k, Fragment fragment);

// ---------------------------------------------------------------------------------------
// Modal formulas

struct ModalFormula;
using ModalPtr = std::shared_ptr<const ModalFormula>;

struct ModalFormula {
    enum class Kind { truth, falsity, prop, negation, conjunction, disjunction, diamond, box, graded };
    Kind kind = Kind::truth;
    std::string name;          // proposition or relation
    std::size_t threshold = 0; // graded diamond
    std::vector<ModalPtr> children;
};

namespace ml {
ModalPtr truth();
ModalPtr falsity();
ModalPtr prop(std::string p);
ModalPtr negate(ModalPtr f);
ModalPtr conj(std::vector<ModalPtr> fs);
ModalPtr disj(std::vector<ModalPtr> fs);
ModalPtr dia(std::string r, ModalPtr f);
ModalPtr box(std::string r, ModalPtr f);
ModalPtr gdia(std::size_t n, std::string r, ModalPtr f);
} // namespace ml

std::size_t modal_depth(const ModalFormula& f);
std::size_t formula_size(const ModalFormula& f);
std::string to_sexpr(const ModalFormula& f);
ModalPtr parse_modal_formula(std::string_view text);

/// Truth at `state` (default: the point). Throws PreconditionError on unknown symbols.
bool eval_modal(const ModalFormula& f, const Structure& k, std::optional<Element> state = std::nullopt);

/// A graded modal formula of depth <= depth true at the point of K1 and false at the point
/// of K2, built from the graded types of the two points; nullopt when the types coincide.
std::optional<ModalPtr> graded_distinguisher(const Structure& k1, const Structure& k2, std::size_t depth);

/// Graded modal classes over all states of the given Kripke structures, modal depth <= depth,
/// size <= size_bound, thresholds up to threshold_cap; returns whether some enumerated
/// formula separates the points of worlds i and j (either direction), with the smallest one.
class ModalEnumerator {
public:
    ModalEnumerator(std::vector<const Structure*> worlds, std::size_t depth, std::size_t size_bound,
                    std::size_t threshold_cap);
    std::optional<ModalPtr> separator(std::size_t i, std::size_t j) const;
    std::size_t class_count() const noexcept { return formulas_.size(); }

private:
    std::vector<ModalPtr> formulas_;
    std::vector<std::vector<bool>> at_points_; // per formula, per world
};

} // namespace gc
