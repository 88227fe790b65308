#include "nia/cost.h"

#include <algorithm>

namespace nia {

namespace {

using Kind = CostExpr::Kind;
using NodeId = CostExpr::NodeId;

Integer guard_value(const Integer& p, Relation rel) {
  if (relation_holds(rel, p)) return Integer(0);
  switch (rel) {
    case Relation::LEQ: return abs_value(p);
    case Relation::LT: return abs_value(p) + 1;
    default: return Integer(1);  // NEQ
  }
}

template <class KidValue>
Integer inner_value(const CostExpr::Node& n, KidValue&& kid) {
  switch (n.kind) {
    case Kind::Ite: return kid(n.kids[0]) == 0 ? kid(n.kids[1]) : kid(n.kids[2]);
    case Kind::Sum: {
      Integer s = 0;
      for (NodeId k : n.kids) s += kid(k);
      return s;
    }
    case Kind::Product: {
      Integer p = 1;
      for (NodeId k : n.kids) {
        const Integer& v = kid(k);
        if (v == 0) return Integer(0);
        p *= v;
      }
      return p;
    }
    default: return Integer(0);
  }
}

Integer leaf_value(const CostExpr::Node& n, std::span<const Integer> a) {
  switch (n.kind) {
    case Kind::Const: return n.constant;
    case Kind::BoolTest: return Integer((a[n.var] != 0) == n.want_true ? 0 : 1);
    case Kind::AbsDiff: return abs_value(n.poly.evaluate(a));
    case Kind::IteGuard: return guard_value(n.poly.evaluate(a), n.rel);
    default: return Integer(0);
  }
}

bool is_leaf(Kind k) { return k != Kind::Ite && k != Kind::Sum && k != Kind::Product; }

class Compiler {
 public:
  Compiler(const TermStore& store, const FixedValues& fixed) : store_(store), fixed_(fixed) {}

  NodeId constant(Integer v) {
    CostExpr::Node n;
    n.kind = Kind::Const;
    n.constant = std::move(v);
    return out.add(std::move(n));
  }

  NodeId inner(Kind k, std::vector<NodeId> kids) {
    CostExpr::Node n;
    n.kind = k;
    n.kids = std::move(kids);
    return out.add(std::move(n));
  }

  NodeId literal(Literal l) {
    if (!store_.is_atom(l)) {
      VarId b = store_.bool_var_of(l);
      if (const Integer* v = fixed_value(b)) return constant(Integer((*v != 0) == l.positive() ? 0 : 1));
      CostExpr::Node n;
      n.kind = Kind::BoolTest;
      n.var = b;
      n.want_true = l.positive();
      return out.add(std::move(n));
    }
    const Atom& atom = store_.atom(store_.atom_of(l));
    Polynomial p = atom.lhs;
    Relation rel = atom.rel;
    if (l.negative()) {
      switch (rel) {
        case Relation::EQ: rel = Relation::NEQ; break;
        case Relation::NEQ: rel = Relation::EQ; break;
        case Relation::LEQ: p = -p; rel = Relation::LT; break;
        case Relation::LT: p = -p; rel = Relation::LEQ; break;
      }
    }
    if (fixed_) p = p.substitute(fixed_);
    CostExpr::Node n;
    n.kind = rel == Relation::EQ ? Kind::AbsDiff : Kind::IteGuard;
    if (p.is_constant()) {
      Integer c = p.constant_term();
      return constant(rel == Relation::EQ ? abs_value(c) : guard_value(c, rel));
    }
    n.poly = std::move(p);
    n.rel = rel;
    return out.add(std::move(n));
  }

  NodeId expr(ExprId e, bool neg) {
    const ExprNode& n = store_.expr(e);
    switch (n.kind) {
      case ExprKind::True: return constant(Integer(neg ? 1 : 0));
      case ExprKind::False: return constant(Integer(neg ? 0 : 1));
      case ExprKind::Lit: return literal(neg ? ~n.lit : n.lit);
      case ExprKind::Not: return expr(n.kids[0], !neg);
      case ExprKind::And:
      case ExprKind::Or: {
        std::vector<NodeId> kids;
        for (ExprId k : n.kids) kids.push_back(expr(k, neg));
        bool conj = (n.kind == ExprKind::And) != neg;
        return inner(conj ? Kind::Sum : Kind::Product, std::move(kids));
      }
      case ExprKind::Ite: {
        NodeId c = expr(n.kids[0], false);
        NodeId t = expr(n.kids[1], neg);
        NodeId f = expr(n.kids[2], neg);
        return inner(Kind::Ite, {c, t, f});
      }
    }
    throw SortError("malformed Boolean structure");
  }

  CostExpr out;

 private:
  const Integer* fixed_value(VarId v) const { return fixed_ ? fixed_(v) : nullptr; }

  const TermStore& store_;
  const FixedValues& fixed_;
};

}  // namespace

CostExpr::NodeId CostExpr::add(Node n) {
  nodes_.push_back(std::move(n));
  return static_cast<NodeId>(nodes_.size() - 1);
}

void CostExpr::finalize() {
  parents_.assign(nodes_.size(), root());
  occurrences_.clear();
  for (NodeId i = 0; i < nodes_.size(); ++i) {
    const Node& n = nodes_[i];
    for (NodeId k : n.kids) parents_[k] = i;
    std::vector<VarId> vars;
    if (n.kind == Kind::BoolTest) vars.push_back(n.var);
    if (n.kind == Kind::AbsDiff || n.kind == Kind::IteGuard) vars = n.poly.variables();
    for (VarId v : vars) {
      if (occurrences_.size() <= v) occurrences_.resize(v + 1);
      occurrences_[v].push_back(i);
    }
  }
  affected_.assign(occurrences_.size(), {});
  std::vector<NodeId> seen(nodes_.size(), 0);
  for (VarId v = 0; v < occurrences_.size(); ++v) {
    auto& out = affected_[v];
    for (NodeId leaf : occurrences_[v]) {
      for (NodeId n = leaf;; n = parents_[n]) {
        if (seen[n] == v + 1) break;
        seen[n] = v + 1;
        out.push_back(n);
        if (n == root()) break;
      }
    }
    std::sort(out.begin(), out.end());
  }
}

std::span<const CostExpr::NodeId> CostExpr::occurrences(VarId x) const {
  if (x >= occurrences_.size()) return {};
  return occurrences_[x];
}

std::span<const CostExpr::NodeId> CostExpr::affected(VarId x) const {
  if (x >= affected_.size()) return {};
  return affected_[x];
}

CostExpr compile(const TermStore& store, ExprId formula, const FixedValues& fixed) {
  Compiler c(store, fixed);
  c.expr(formula, false);
  c.out.finalize();
  return std::move(c.out);
}

CostExpr compile(const TermStore& store, std::span<const Clause> clauses, std::span<const Literal> units,
                 const FixedValues& fixed) {
  Compiler c(store, fixed);
  std::vector<NodeId> conj;
  for (const Clause& cl : clauses) {
    std::vector<NodeId> disj;
    for (Literal l : cl) disj.push_back(c.literal(l));
    conj.push_back(c.inner(Kind::Product, std::move(disj)));
  }
  for (Literal l : units) conj.push_back(c.literal(l));
  c.inner(Kind::Sum, std::move(conj));
  c.out.finalize();
  return std::move(c.out);
}

namespace {

void check_complete(const CostExpr& c, std::span<const Integer> a) {
  if (a.size() < c.variable_bound()) {
    throw IncompleteAssignment("assignment covers " + std::to_string(a.size()) + " variables, cost reads " +
                               std::to_string(c.variable_bound()));
  }
}

Integer eval_node(const CostExpr& c, NodeId id, std::span<const Integer> a) {
  const CostExpr::Node& n = c.nodes()[id];
  if (is_leaf(n.kind)) return leaf_value(n, a);
  if (n.kind == Kind::Product) {
    // Evaluated lazily so a zero factor skips the rest.
    Integer p = 1;
    for (NodeId k : n.kids) {
      Integer v = eval_node(c, k, a);
      if (v == 0) return v;
      p *= v;
    }
    return p;
  }
  if (n.kind == Kind::Ite) {
    return eval_node(c, n.kids[0], a) == 0 ? eval_node(c, n.kids[1], a) : eval_node(c, n.kids[2], a);
  }
  Integer s = 0;
  for (NodeId k : n.kids) s += eval_node(c, k, a);
  return s;
}

}  // namespace

Integer evaluate(const CostExpr& c, std::span<const Integer> assignment) {
  check_complete(c, assignment);
  return eval_node(c, c.root(), assignment);
}

Integer evaluate_delta(const CostExpr& c, std::span<const Integer> assignment, VarId x, const Integer& value) {
  check_complete(c, assignment);
  std::vector<Integer> changed(assignment.begin(), assignment.end());
  if (x < changed.size()) changed[x] = value;
  return eval_node(c, c.root(), changed);
}

CostEvaluator::CostEvaluator(const CostExpr& c, std::vector<Integer> assignment)
    : expr_(c), assignment_(std::move(assignment)) {
  check_complete(c, assignment_);
  auto nodes = c.nodes();
  values_.resize(nodes.size());
  scratch_.resize(nodes.size());
  mark_.assign(nodes.size(), 0);
  for (NodeId i = 0; i < nodes.size(); ++i) {
    values_[i] = is_leaf(nodes[i].kind) ? leaf_value(nodes[i], assignment_)
                                        : inner_value(nodes[i], [&](NodeId k) -> const Integer& { return values_[k]; });
  }
}

Integer CostEvaluator::cost_if(VarId x, const Integer& value) {
  auto affected = expr_.affected(x);
  if (affected.empty()) return cost();
  if (x >= assignment_.size()) throw IncompleteAssignment("variable outside the assignment");
  ++stamp_;
  Integer saved = assignment_[x];
  assignment_[x] = value;
  auto nodes = expr_.nodes();
  auto kid = [&](NodeId k) -> const Integer& { return mark_[k] == stamp_ ? scratch_[k] : values_[k]; };
  for (NodeId n : affected) {
    scratch_[n] = is_leaf(nodes[n].kind) ? leaf_value(nodes[n], assignment_) : inner_value(nodes[n], kid);
    mark_[n] = stamp_;
  }
  assignment_[x] = std::move(saved);
  return scratch_[expr_.root()];
}

void CostEvaluator::assign(VarId x, const Integer& value) {
  auto affected = expr_.affected(x);
  if (x < assignment_.size()) assignment_[x] = value;
  auto nodes = expr_.nodes();
  for (NodeId n : affected) {
    values_[n] = is_leaf(nodes[n].kind)
                     ? leaf_value(nodes[n], assignment_)
                     : inner_value(nodes[n], [&](NodeId k) -> const Integer& { return values_[k]; });
  }
}

}  // namespace nia
