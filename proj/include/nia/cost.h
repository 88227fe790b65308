#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "nia/integer.h"
#include "nia/polynomial.h"
#include "nia/term_store.h"

namespace nia {

class IncompleteAssignment : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Logic-to-optimization cost term over the integers with d(t1, t2) = |t1 - t2|
/// and epsilon = 1. Leaves cover the atom rules of the translation table:
///
///   b           BoolTest(b, true)        0 if b else 1
///   not b       BoolTest(b, false)       1 if b else 0
///   p = 0       AbsDiff(p)               |p|
///   p <= 0      IteGuard(p <= 0, |p|)
///   p < 0       IteGuard(p < 0, |p| + 1)
///   p != 0      IteGuard(p != 0, 1)
///
/// Conjunction is Sum, disjunction is Product, Boolean if-then-else is Ite
/// (its condition holds iff the condition's cost is zero).
class CostExpr {
 public:
  enum class Kind : std::uint8_t { Const, BoolTest, AbsDiff, IteGuard, Ite, Sum, Product };

  struct Node {
    Kind kind = Kind::Const;
    Integer constant;        // Const
    VarId var = 0;           // BoolTest
    bool want_true = true;   // BoolTest
    Polynomial poly;         // AbsDiff, IteGuard
    Relation rel = Relation::EQ;  // IteGuard condition `poly rel 0`
    std::vector<std::uint32_t> kids;  // Ite: [cond, then, else]
  };

  using NodeId = std::uint32_t;

    /// Nodes are stored children-first; the root is the last node.
  std::span<const Node> nodes() const { return nodes_; }
  NodeId root() const { return static_cast<NodeId>(nodes_.size() - 1); }
  NodeId parent(NodeId n) const { return parents_[n]; }
  /// Leaves whose value depends on x.
  std::span<const NodeId> occurrences(VarId x) const;
  /// Leaves together with all their ancestors, in increasing id order.
  std::span<const NodeId> affected(VarId x) const;
  /// One past the largest variable id the expression reads.
  std::size_t variable_bound() const { return occurrences_.size(); }

  NodeId add(Node n);
  void finalize();

 private:
  std::vector<Node> nodes_;
  std::vector<NodeId> parents_;
  std::vector<std::vector<NodeId>> occurrences_;
  std::vector<std::vector<NodeId>> affected_;
};

/// Lookup of variables treated as constants during compilation.
using FixedValues = std::function<const Integer*(VarId)>;

/// Compiles a Boolean structure. Negations are pushed to the leaves; a
/// negated inequality uses the complementary relation, e.g. not(p <= 0) is
/// compiled as -p < 0.
CostExpr compile(const TermStore& store, ExprId formula, const FixedValues& fixed = nullptr);

/// Compiles the conjunction of `clauses` and `units`.
CostExpr compile(const TermStore& store, std::span<const Clause> clauses, std::span<const Literal> units = {},
                 const FixedValues& fixed = nullptr);

/// Exact cost under a complete assignment (indexed by variable id, Booleans
/// as 0/1).
Integer evaluate(const CostExpr& c, std::span<const Integer> assignment);

/// evaluate(c, assignment[x := value]).
Integer evaluate_delta(const CostExpr& c, std::span<const Integer> assignment, VarId x, const Integer& value);

/// Incremental evaluator: caches every node value for the current assignment
/// and re-evaluates only the nodes above the leaves that mention a changed
/// variable.
class CostEvaluator {
 public:
  CostEvaluator(const CostExpr& c, std::vector<Integer> assignment);

  const Integer& cost() const { return values_[expr_.root()]; }
  const std::vector<Integer>& assignment() const { return assignment_; }

  /// Cost after x := value, without committing.
  Integer cost_if(VarId x, const Integer& value);
  void assign(VarId x, const Integer& value);

 private:
  const CostExpr& expr_;
  std::vector<Integer> assignment_;
  std::vector<Integer> values_;
  std::vector<Integer> scratch_;
  std::vector<std::uint32_t> mark_;
  std::uint32_t stamp_ = 0;
};

}  // namespace nia
