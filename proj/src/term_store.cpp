#include "nia/term_store.h"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <unordered_set>

namespace nia {

const char* relation_symbol(Relation r) {
  switch (r) {
    case Relation::EQ: return "=";
    case Relation::NEQ: return "!=";
    case Relation::LEQ: return "<=";
    case Relation::LT: return "<";
  }
  return "?";
}

bool relation_holds(Relation r, const Integer& value) {
  switch (r) {
    case Relation::EQ: return value == 0;
    case Relation::NEQ: return value != 0;
    case Relation::LEQ: return value <= 0;
    case Relation::LT: return value < 0;
  }
  return false;
}

Atom normalize_atom(const Polynomial& lhs, Relation rel, const Polynomial& rhs) {
  Polynomial p = lhs - rhs;
  Integer g = p.content();
  if (g > 1) p = p.divide_exact(g);
  if ((rel == Relation::EQ || rel == Relation::NEQ) && !p.is_zero() && p.leading_term().coeff < 0) p = -p;
  return Atom{std::move(p), rel};
}

std::optional<Clause> make_clause(std::vector<Literal> lits) {
  Clause out;
  out.reserve(lits.size());
  std::unordered_set<std::uint32_t> seen;
  for (Literal l : lits) {
    if (seen.count((~l).code()) != 0) return std::nullopt;
    if (seen.insert(l.code()).second) out.push_back(l);
  }
  return out;
}

std::size_t TermStore::ExprHash::operator()(const ExprNode& n) const {
  std::size_t h = static_cast<std::size_t>(n.kind) * 1000003U + n.lit.code();
  for (ExprId k : n.kids) h = h * 31 + k;
  return h;
}

TermStore::TermStore() {
  intern_expr(ExprNode{ExprKind::True, {}, {}});
  intern_expr(ExprNode{ExprKind::False, {}, {}});
}

VarId TermStore::new_variable(std::string name, Sort sort, bool auxiliary) {
  if (by_name_.count(name) != 0) throw SortError("variable '" + name + "' declared twice");
  auto id = static_cast<VarId>(variables_.size());
  by_name_.emplace(name, id);
  variables_.push_back(Variable{id, sort, std::move(name), auxiliary});
  var_prop_.push_back(0);
  if (sort == Sort::Boolean) {
    var_prop_[id] = static_cast<PropId>(props_.size());
    props_.push_back(Proposition{Proposition::Kind::BoolVar, id});
  }
  return id;
}

VarId TermStore::fresh_variable(const std::string& prefix, Sort sort, bool auxiliary) {
  std::string name;
  do {
    name = prefix + std::to_string(fresh_counter_++);
  } while (by_name_.count(name) != 0);
  return new_variable(std::move(name), sort, auxiliary);
}

std::optional<VarId> TermStore::find_variable(const std::string& name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

Literal TermStore::atom_literal(const Polynomial& lhs, Relation rel, const Polynomial& rhs) {
  return intern_atom(normalize_atom(lhs, rel, rhs));
}

Literal TermStore::intern_atom(Atom atom) {
  if (auto it = atom_index_.find(atom); it != atom_index_.end()) {
    return Literal(atom_prop_[it->second], false);
  }
  auto vars = atom.lhs.variables();
  for (VarId v : vars) {
    if (v >= variables_.size() || variables_[v].sort != Sort::Integer) {
      throw SortError("arithmetic atom over non-integer variable");
    }
  }
  auto id = static_cast<AtomId>(atoms_.size());
  atom_index_.emplace(atom, id);
  atoms_.push_back(std::move(atom));
  atom_vars_.push_back(std::move(vars));
  auto p = static_cast<PropId>(props_.size());
  props_.push_back(Proposition{Proposition::Kind::Atom, id});
  atom_prop_.push_back(p);
  return Literal(p, false);
}

Literal TermStore::bool_literal(VarId v) const {
  if (variables_.at(v).sort != Sort::Boolean) throw SortError("'" + variables_[v].name + "' is not Boolean");
  return Literal(var_prop_[v], false);
}

std::vector<VarId> TermStore::literal_variables(Literal l) const {
  const auto& p = props_[l.prop()];
  if (p.kind == Proposition::Kind::BoolVar) return {p.index};
  return atom_vars_[p.index];
}

bool TermStore::evaluate(Literal l, std::span<const Integer> assignment) const {
  const auto& p = props_[l.prop()];
  bool v;
  if (p.kind == Proposition::Kind::BoolVar) {
    v = assignment[p.index] != 0;
  } else {
    const Atom& a = atoms_[p.index];
    v = relation_holds(a.rel, a.lhs.evaluate(assignment));
  }
  return v != l.negative();
}

bool TermStore::evaluate(const Clause& c, std::span<const Integer> assignment) const {
  return std::any_of(c.begin(), c.end(), [&](Literal l) { return evaluate(l, assignment); });
}

bool TermStore::evaluate(const Formula& f, std::span<const Integer> assignment) const {
  return std::all_of(f.clauses.begin(), f.clauses.end(), [&](const Clause& c) { return evaluate(c, assignment); });
}

bool TermStore::evaluate_expr(ExprId e, std::span<const Integer> assignment) const {
  const ExprNode& n = exprs_[e];
  switch (n.kind) {
    case ExprKind::True: return true;
    case ExprKind::False: return false;
    case ExprKind::Lit: return evaluate(n.lit, assignment);
    case ExprKind::Not: return !evaluate_expr(n.kids[0], assignment);
    case ExprKind::And:
      return std::all_of(n.kids.begin(), n.kids.end(), [&](ExprId k) { return evaluate_expr(k, assignment); });
    case ExprKind::Or:
      return std::any_of(n.kids.begin(), n.kids.end(), [&](ExprId k) { return evaluate_expr(k, assignment); });
    case ExprKind::Ite:
      return evaluate_expr(n.kids[0], assignment) ? evaluate_expr(n.kids[1], assignment)
                                                  : evaluate_expr(n.kids[2], assignment);
  }
  return false;
}

ExprId TermStore::intern_expr(ExprNode node) {
  if (auto it = expr_index_.find(node); it != expr_index_.end()) return it->second;
  auto id = static_cast<ExprId>(exprs_.size());
  expr_index_.emplace(node, id);
  exprs_.push_back(std::move(node));
  return id;
}

ExprId TermStore::mk_true() { return 0; }
ExprId TermStore::mk_false() { return 1; }

ExprId TermStore::mk_lit(Literal l) { return intern_expr(ExprNode{ExprKind::Lit, l, {}}); }

ExprId TermStore::mk_not(ExprId e) {
  const ExprNode& n = exprs_[e];
  switch (n.kind) {
    case ExprKind::True: return mk_false();
    case ExprKind::False: return mk_true();
    case ExprKind::Lit: return mk_lit(~n.lit);
    case ExprKind::Not: return n.kids[0];
    default: return intern_expr(ExprNode{ExprKind::Not, {}, {e}});
  }
}

ExprId TermStore::mk_and(std::vector<ExprId> kids) {
  std::vector<ExprId> flat;
  for (ExprId k : kids) {
    const ExprNode& n = exprs_[k];
    if (n.kind == ExprKind::False) return mk_false();
    if (n.kind == ExprKind::True) continue;
    if (n.kind == ExprKind::And) {
      flat.insert(flat.end(), n.kids.begin(), n.kids.end());
    } else {
      flat.push_back(k);
    }
  }
  std::vector<ExprId> uniq;
  for (ExprId k : flat) {
    if (std::find(uniq.begin(), uniq.end(), k) == uniq.end()) uniq.push_back(k);
  }
  if (uniq.empty()) return mk_true();
  if (uniq.size() == 1) return uniq[0];
  return intern_expr(ExprNode{ExprKind::And, {}, std::move(uniq)});
}

ExprId TermStore::mk_or(std::vector<ExprId> kids) {
  std::vector<ExprId> flat;
  for (ExprId k : kids) {
    const ExprNode& n = exprs_[k];
    if (n.kind == ExprKind::True) return mk_true();
    if (n.kind == ExprKind::False) continue;
    if (n.kind == ExprKind::Or) {
      flat.insert(flat.end(), n.kids.begin(), n.kids.end());
    } else {
      flat.push_back(k);
    }
  }
  std::vector<ExprId> uniq;
  for (ExprId k : flat) {
    if (std::find(uniq.begin(), uniq.end(), k) == uniq.end()) uniq.push_back(k);
  }
  if (uniq.empty()) return mk_false();
  if (uniq.size() == 1) return uniq[0];
  return intern_expr(ExprNode{ExprKind::Or, {}, std::move(uniq)});
}

ExprId TermStore::mk_ite(ExprId c, ExprId t, ExprId e) {
  auto kind = [&](ExprId x) { return exprs_[x].kind; };
  if (kind(c) == ExprKind::True) return t;
  if (kind(c) == ExprKind::False) return e;
  if (t == e) return t;
  if (kind(t) == ExprKind::True) return mk_or({c, e});
  if (kind(t) == ExprKind::False) return mk_and({mk_not(c), e});
  if (kind(e) == ExprKind::True) return mk_or({mk_not(c), t});
  if (kind(e) == ExprKind::False) return mk_and({c, t});
  return intern_expr(ExprNode{ExprKind::Ite, {}, {c, t, e}});
}

ExprId TermStore::mk_implies(ExprId a, ExprId b) { return mk_or({mk_not(a), b}); }
ExprId TermStore::mk_iff(ExprId a, ExprId b) { return mk_ite(a, b, mk_not(b)); }
ExprId TermStore::mk_xor(ExprId a, ExprId b) { return mk_ite(a, mk_not(b), b); }

std::string TermStore::to_string(Literal l) const {
  const auto& p = props_[l.prop()];
  std::string s;
  if (p.kind == Proposition::Kind::BoolVar) {
    s = variables_[p.index].name;
  } else {
    const Atom& a = atoms_[p.index];
    s = "(" + a.lhs.to_string([this](VarId v) { return variables_[v].name; }) + " " + relation_symbol(a.rel) + " 0)";
  }
  return l.negative() ? "!" + s : s;
}

std::string TermStore::to_string(const Clause& c) const {
  if (c.empty()) return "false";
  std::string s;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i > 0) s += " | ";
    s += to_string(c[i]);
  }
  return s;
}

namespace {

std::string numeral(const Integer& v) { return v < 0 ? "(- " + Integer(-v).get_str() + ")" : v.get_str(); }

}  // namespace

std::string TermStore::term_to_smtlib(const Polynomial& p) const {
  if (p.is_zero()) return "0";
  std::vector<std::string> parts;
  for (const Term& t : p.terms()) {
    std::vector<std::string> factors;
    if (t.coeff != 1 || t.mono.is_constant()) factors.push_back(numeral(t.coeff));
    for (const auto& vp : t.mono.powers()) {
      for (unsigned i = 0; i < vp.exp; ++i) factors.push_back(variables_[vp.var].name);
    }
    if (factors.size() == 1) {
      parts.push_back(factors[0]);
    } else {
      std::string s = "(*";
      for (const auto& f : factors) s += " " + f;
      parts.push_back(s + ")");
    }
  }
  if (parts.size() == 1) return parts[0];
  std::string s = "(+";
  for (const auto& x : parts) s += " " + x;
  return s + ")";
}

std::string TermStore::literal_to_smtlib(Literal l) const {
  const auto& p = props_[l.prop()];
  std::string s;
  if (p.kind == Proposition::Kind::BoolVar) {
    s = variables_[p.index].name;
  } else {
    const Atom& a = atoms_[p.index];
    std::string lhs = term_to_smtlib(a.lhs);
    switch (a.rel) {
      case Relation::EQ: s = "(= " + lhs + " 0)"; break;
      case Relation::NEQ: s = "(distinct " + lhs + " 0)"; break;
      case Relation::LEQ: s = "(<= " + lhs + " 0)"; break;
      case Relation::LT: s = "(< " + lhs + " 0)"; break;
    }
  }
  return l.negative() ? "(not " + s + ")" : s;
}

std::string TermStore::expr_to_smtlib(ExprId e) const {
  const ExprNode& n = exprs_[e];
  auto nary = [&](const char* op) {
    std::string s = std::string("(") + op;
    for (ExprId k : n.kids) s += " " + expr_to_smtlib(k);
    return s + ")";
  };
  switch (n.kind) {
    case ExprKind::True: return "true";
    case ExprKind::False: return "false";
    case ExprKind::Lit: return literal_to_smtlib(n.lit);
    case ExprKind::Not: return nary("not");
    case ExprKind::And: return nary("and");
    case ExprKind::Or: return nary("or");
    case ExprKind::Ite: return nary("ite");
  }
  return "";
}

std::vector<VarId> clause_variables(const TermStore& store, std::span<const Clause> clauses) {
  std::vector<char> seen(store.num_variables(), 0);
  for (const auto& c : clauses) {
    for (Literal l : c) {
      for (VarId v : store.literal_variables(l)) seen[v] = 1;
    }
  }
  std::vector<VarId> out;
  for (VarId v = 0; v < seen.size(); ++v) {
    if (seen[v] != 0) out.push_back(v);
  }
  return out;
}

namespace {

class Clausifier {
 public:
  explicit Clausifier(TermStore& store) : store_(store) {}

  void assert_top(ExprId e) {
    const ExprNode& n = store_.expr(e);
    switch (n.kind) {
      case ExprKind::True: return;
      case ExprKind::False: top_.emplace_back(); return;
      case ExprKind::And: {
        auto kids = n.kids;
        for (ExprId k : kids) assert_top(k);
        return;
      }
      case ExprKind::Or: {
        auto kids = n.kids;
        std::vector<Literal> lits;
        for (ExprId k : kids) lits.push_back(encode(k));
        add(top_, std::move(lits));
        return;
      }
      default: add(top_, {encode(e)});
    }
  }

  Formula finish() {
    Formula f;
    f.clauses = std::move(top_);
    f.clauses.insert(f.clauses.end(), std::make_move_iterator(defs_.begin()), std::make_move_iterator(defs_.end()));
    f.variables = clause_variables(store_, f.clauses);
    return f;
  }

 private:
  static void add(std::vector<Clause>& into, std::vector<Literal> lits) {
    if (auto c = make_clause(std::move(lits))) into.push_back(std::move(*c));
  }

  Literal encode(ExprId e) {
    const ExprNode& node = store_.expr(e);
    if (node.kind == ExprKind::Lit) return node.lit;
    if (node.kind == ExprKind::Not) return ~encode(node.kids[0]);
    if (auto it = defined_.find(e); it != defined_.end()) return it->second;
    assert(node.kind != ExprKind::True && node.kind != ExprKind::False);

    auto kids = node.kids;
    const ExprKind kind = node.kind;
    std::vector<Literal> k;
    for (ExprId c : kids) k.push_back(encode(c));
    Literal t = store_.bool_literal(store_.fresh_variable("tseitin!", Sort::Boolean, true));
    defined_.emplace(e, t);

    if (kind == ExprKind::And) {
      std::vector<Literal> back{t};
      for (Literal l : k) {
        add(defs_, {~t, l});
        back.push_back(~l);
      }
      add(defs_, std::move(back));
    } else if (kind == ExprKind::Or) {
      std::vector<Literal> fwd{~t};
      fwd.insert(fwd.end(), k.begin(), k.end());
      add(defs_, std::move(fwd));
      for (Literal l : k) add(defs_, {t, ~l});
    } else {
      Literal c = k[0], a = k[1], b = k[2];
      add(defs_, {~t, ~c, a});
      add(defs_, {~t, c, b});
      add(defs_, {t, ~c, ~a});
      add(defs_, {t, c, ~b});
    }
    return t;
  }

  TermStore& store_;
  std::vector<Clause> top_;
  std::vector<Clause> defs_;
  std::unordered_map<ExprId, Literal> defined_;
};

}  // namespace

Formula clausify(TermStore& store, std::span<const ExprId> assertions) {
  Clausifier c(store);
  for (ExprId e : assertions) c.assert_top(e);
  return c.finish();
}

}  // namespace nia
