#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "nia/polynomial.h"

namespace nia {

class SortError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Sort : std::uint8_t { Boolean, Integer };
enum class Relation : std::uint8_t { EQ, NEQ, LEQ, LT };

const char* relation_symbol(Relation r);
/// Truth of `value rel 0`.
bool relation_holds(Relation r, const Integer& value);

struct Variable {
  VarId id;
  Sort sort;
  std::string name;
  bool auxiliary = false;
};

using AtomId = std::uint32_t;
using PropId = std::uint32_t;

/// Normalized arithmetic constraint `lhs rel 0`.
struct Atom {
  Polynomial lhs;
  Relation rel;
  friend bool operator==(const Atom&, const Atom&) = default;
};

/// (lhs - rhs) rel 0, divided by the coefficient content; EQ/NEQ atoms are
/// additionally scaled so the grlex-leading coefficient is positive.
Atom normalize_atom(const Polynomial& lhs, Relation rel, const Polynomial& rhs);

/// A proposition is either a Boolean variable or an arithmetic atom. Literals
/// are signed propositions packed as 2*prop + negative.
class Literal {
 public:
  constexpr Literal() = default;
  constexpr Literal(PropId prop, bool negative) : code_(prop * 2 + (negative ? 1U : 0U)) {}
  static constexpr Literal from_code(std::uint32_t c) {
    Literal l;
    l.code_ = c;
    return l;
  }

  constexpr PropId prop() const { return code_ >> 1U; }
  constexpr bool negative() const { return (code_ & 1U) != 0; }
  constexpr bool positive() const { return !negative(); }
  constexpr std::uint32_t code() const { return code_; }
  constexpr Literal operator~() const { return from_code(code_ ^ 1U); }

  friend constexpr auto operator<=>(Literal, Literal) = default;

 private:
  std::uint32_t code_ = 0;
};

constexpr Literal negate(Literal l) { return ~l; }

struct Proposition {
  enum class Kind : std::uint8_t { BoolVar, Atom } kind;
  std::uint32_t index;  // VarId or AtomId
};

using Clause = std::vector<Literal>;

/// Drops repeated literals keeping first occurrences; nullopt when the
/// clause contains both L and ~L.
std::optional<Clause> make_clause(std::vector<Literal> lits);

struct Formula {
  std::vector<Clause> clauses;
  std::vector<VarId> variables;  // sorted
};

using ExprId = std::uint32_t;
enum class ExprKind : std::uint8_t { True, False, Lit, Not, And, Or, Ite };

/// Node of a hash-consed Boolean structure over literals.
struct ExprNode {
  ExprKind kind;
  Literal lit;  // for Lit
  std::vector<ExprId> kids;
  friend bool operator==(const ExprNode&, const ExprNode&) = default;
};

/// Append-only store of variables, atoms, propositions, and Boolean
/// structures for one solver instance.
class TermStore {
 public:
  TermStore();

  VarId new_variable(std::string name, Sort sort, bool auxiliary = false);
  /// Fresh variable named `<prefix><n>` that does not clash with any other.
  VarId fresh_variable(const std::string& prefix, Sort sort, bool auxiliary);
  std::optional<VarId> find_variable(const std::string& name) const;
  const Variable& variable(VarId v) const { return variables_[v]; }
  std::size_t num_variables() const { return variables_.size(); }
  std::span<const Variable> variables() const { return variables_; }

  /// Positive literal of the interned atom normalize_atom(lhs, rel, rhs).
  Literal atom_literal(const Polynomial& lhs, Relation rel, const Polynomial& rhs);
  /// Positive literal of an already-normalized atom.
  Literal intern_atom(Atom atom);
  Literal bool_literal(VarId v) const;

  std::size_t num_atoms() const { return atoms_.size(); }
  const Atom& atom(AtomId a) const { return atoms_[a]; }
  /// Sorted variables of the atom's polynomial.
  std::span<const VarId> atom_variables(AtomId a) const { return atom_vars_[a]; }
  Literal atom_positive(AtomId a) const { return Literal(atom_prop_[a], false); }

  std::size_t num_props() const { return props_.size(); }
  const Proposition& prop(PropId p) const { return props_[p]; }
  bool is_atom(Literal l) const { return props_[l.prop()].kind == Proposition::Kind::Atom; }
  AtomId atom_of(Literal l) const { return props_[l.prop()].index; }
  VarId bool_var_of(Literal l) const { return props_[l.prop()].index; }
  /// Variables the literal's truth depends on.
  std::vector<VarId> literal_variables(Literal l) const;

  /// Truth value under a complete assignment (Booleans stored as 0/1).
  bool evaluate(Literal l, std::span<const Integer> assignment) const;
  bool evaluate(const Clause& c, std::span<const Integer> assignment) const;
  bool evaluate(const Formula& f, std::span<const Integer> assignment) const;
  bool evaluate_expr(ExprId e, std::span<const Integer> assignment) const;

  ExprId mk_true();
  ExprId mk_false();
  ExprId mk_lit(Literal l);
  ExprId mk_not(ExprId e);
  ExprId mk_and(std::vector<ExprId> kids);
  ExprId mk_or(std::vector<ExprId> kids);
  ExprId mk_ite(ExprId c, ExprId t, ExprId e);
  ExprId mk_implies(ExprId a, ExprId b);
  ExprId mk_iff(ExprId a, ExprId b);
  ExprId mk_xor(ExprId a, ExprId b);
  const ExprNode& expr(ExprId e) const { return exprs_[e]; }

  std::string var_name(VarId v) const { return variables_[v].name; }
  std::string to_string(Literal l) const;
  std::string to_string(const Clause& c) const;
  /// SMT-LIB rendering of a polynomial term.
  std::string term_to_smtlib(const Polynomial& p) const;
  std::string literal_to_smtlib(Literal l) const;
  std::string expr_to_smtlib(ExprId e) const;

 private:
  struct AtomHash {
    std::size_t operator()(const Atom& a) const { return a.lhs.hash() * 7 + static_cast<std::size_t>(a.rel); }
  };
  struct ExprHash {
    std::size_t operator()(const ExprNode& n) const;
  };

  ExprId intern_expr(ExprNode node);

  std::vector<Variable> variables_;
  std::unordered_map<std::string, VarId> by_name_;
  std::vector<PropId> var_prop_;  // for Boolean variables

  std::vector<Atom> atoms_;
  std::vector<std::vector<VarId>> atom_vars_;
  std::unordered_map<Atom, AtomId, AtomHash> atom_index_;
  std::vector<PropId> atom_prop_;

  std::vector<Proposition> props_;

  std::vector<ExprNode> exprs_;
  std::unordered_map<ExprNode, ExprId, ExprHash> expr_index_;
  std::uint32_t fresh_counter_ = 0;
};

/// Definitional clausification of a conjunction of assertions. Every
/// non-literal subformula below the top-level conjunction/disjunction gets an
/// auxiliary Boolean variable t with both directions of t <-> subformula.
Formula clausify(TermStore& store, std::span<const ExprId> assertions);

/// Union of the variables occurring in `clauses`.
std::vector<VarId> clause_variables(const TermStore& store, std::span<const Clause> clauses);

}  // namespace nia
