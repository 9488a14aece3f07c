#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hopfsmooth/polynomial.hpp"

namespace hopfsmooth::fol {

/// Ring terms over named variables: integer (or rational) constants, +, -, *.
struct TermNode;
using Term = std::shared_ptr<const TermNode>;

struct TermNode {
  enum class Kind { Const, Var, Add, Mul, Neg };
  Kind kind;
  Coeff value;            // Const, never negative
  std::uint32_t var = 0;  // Var, an interned name
  std::vector<Term> args;
};

Term constant(const Coeff& c);
Term variable(const std::string& name);
/// Zero summands are dropped; a single summand is returned as is.
Term sum(std::vector<Term> xs);
/// Constant factors are folded; a zero factor gives the zero term.
Term product(std::vector<Term> xs);
Term negate(Term x);
bool is_zero_term(const Term& t);

std::uint32_t intern(const std::string& name);
const std::string& name_of(std::uint32_t id);

enum class NodeKind { True, False, Atom, Not, And, Or, Exists, Forall, Lazy, LazyOr };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

/// Fills `conj` with the conjuncts of member `index`, or returns false when
/// the index is not a member of the disjunction.
using MemberFn = std::function<bool(std::size_t index, std::vector<NodePtr>& conj)>;

struct Node {
  NodeKind kind;
  Term term;                         // Atom: term = 0
  std::vector<NodePtr> children;     // Not, And, Or; quantifier body is children[0]
  std::vector<std::uint32_t> bound;  // Exists, Forall
  std::function<NodePtr()> thunk;    // Lazy: built on demand, never cached
  std::size_t count = 0;             // LazyOr: number of candidate indices
  MemberFn member;                   // LazyOr
};

NodePtr truth(bool value);
NodePtr atom(Term t);
NodePtr negation(NodePtr f);
/// Empty conjunction is T, a single conjunct is returned unchanged.
NodePtr conj(std::vector<NodePtr> fs);
/// Empty disjunction is F, a single disjunct is returned unchanged.
NodePtr disj(std::vector<NodePtr> fs);
NodePtr exists(const std::vector<std::string>& vars, NodePtr body);
NodePtr forall(const std::vector<std::string>& vars, NodePtr body);
NodePtr lazy(std::function<NodePtr()> thunk);
/// Disjunction of conjunctions produced by `member` over 0..count-1.
NodePtr lazy_or(std::size_t count, MemberFn member);

/// Which coefficient a free variable stands for. Objects: "f" (index j),
/// "B" (i, j), "Lambda" (i, j_1..j_r), "Delta" (i, j_1, j_2), "sigma" (i, j),
/// "epsilon" (i). Indices are 1-based; j counts graded-lex monomials.
struct FreeVar {
  std::string name;
  std::string object;
  std::vector<std::size_t> index;
};

struct Formula {
  NodePtr root;
  std::vector<FreeVar> free;
  std::size_t n = 0;
  std::size_t d = 0;
  std::string kind;
  bool is_sentence() const noexcept { return free.empty(); }
};

struct FormulaKind {
  enum class Name { Phi, Beta, Delta, Iota, Zeta, Eta, Tau, Theta, Psi, Sentence };
  Name name;
  std::size_t a = 0;  // e, d or p, in the order of the written form
  std::size_t b = 0;
};

/// "phi(e,d)", "beta(d)", "delta(e,d)", "iota(d)", "zeta(d,r)", "eta(d)",
/// "tau(e,d)", "theta(d)", "psi(p)", "Phi(d)".
FormulaKind parse_kind(std::string_view text);
std::string to_string(const FormulaKind& kind);

Formula phi(std::size_t e, std::size_t d, std::size_t n);
Formula beta(std::size_t d, std::size_t n);
Formula delta(std::size_t e, std::size_t d, std::size_t n);
Formula iota(std::size_t d, std::size_t n);
Formula zeta(std::size_t d, std::size_t r, std::size_t n);
Formula eta(std::size_t d, std::size_t n);
/// The counit enters the Jacobian as constants; an empty counit means the origin.
Formula tau(std::size_t e, std::size_t d, std::size_t n, const std::vector<Coeff>& counit = {});
Formula theta(std::size_t d, std::size_t n, const std::vector<Coeff>& counit = {});
Formula psi(std::size_t p);
/// Universal closure of ¬(β ∧ η) ∨ θ over the quadruple's coefficients.
Formula smoothness_sentence(std::size_t d, std::size_t n);
Formula build(const FormulaKind& kind, std::size_t n, const std::vector<Coeff>& counit = {});

/// The number of free variables each builder declares.
std::size_t expected_free_count(const FormulaKind& kind, std::size_t n);

struct Assignment {
  Field field;
  std::unordered_map<std::string, Coeff> values;
};

/// Concrete data for the free variables of a formula over S = k[x_1..x_n].
/// Shorter bases are padded with zeros.
struct Instance {
  RingPtr ring;
  std::vector<Polynomial> basis;
  std::optional<Polynomial> f;
  std::vector<Polynomial> hom;  // Λ(x_i) in S^{⊗r}
  std::vector<Polynomial> comul;
  std::vector<Polynomial> antipode;
  std::vector<Coeff> counit;
};

/// Reads every free variable of F from the instance. Throws
/// InputError("UnboundedTerm") when the data is not d-bounded.
Assignment assign(const Formula& F, const Instance& data);

/// Throws InputError("UnsupportedQuantifierShape") on universal quantifiers
/// and on existential blocks that are not linear conjunctions of equations.
bool evaluate(const Formula& F, const Assignment& a);
bool evaluate(const NodePtr& root, const Assignment& a);

/// Fully parenthesised ASCII: ~ & | (t=0) (E v) (A v), T and F.
/// Throws ResourceLimitExceeded past the output ceiling.
std::string print_formula(const NodePtr& root);
std::string print_formula(const Formula& F);
std::string print_term(const Term& t);
NodePtr parse_formula(std::string_view text);

/// Node count with lazy parts expanded; throws past the ceiling.
std::size_t node_count(const NodePtr& root);
/// Names occurring free, sorted.
std::vector<std::string> free_variables(const NodePtr& root);
/// Every bound variable is quantified exactly once and never also occurs free.
bool well_formed(const NodePtr& root);

}  // namespace hopfsmooth::fol
