#include "nia/trail.h"

#include <cassert>

namespace nia {

Trail::Trail(const TermStore& store) : store_(store) { sync_with_store(); }

void Trail::sync_with_store() {
  props_.resize(store_.num_props());
  vars_.resize(store_.num_variables());
  var_values_.resize(store_.num_variables());
  cache_.resize(store_.num_variables());
}

const Integer* Trail::value_of_var(VarId x) const {
  if (x < var_values_.size() && var_values_[x]) return &*var_values_[x];
  return nullptr;
}

LBool Trail::assigned_value(Literal l) const {
  if (l.prop() >= props_.size()) return LBool::Undef;
  LBool v = props_[l.prop()].value;
  return l.negative() ? ~v : v;
}

LBool Trail::value_of_lit(Literal l) const {
  LBool v = assigned_value(l);
  if (v != LBool::Undef || !store_.is_atom(l)) return v;
  AtomId a = store_.atom_of(l);
  for (VarId x : store_.atom_variables(a)) {
    if (value_of_var(x) == nullptr) return LBool::Undef;
  }
  const Atom& atom = store_.atom(a);
  bool holds = relation_holds(atom.rel, atom.lhs.evaluate([this](VarId x) { return value_of_var(x); }));
  return lbool_of(holds != l.negative());
}

void Trail::assign_literal(Literal l, std::size_t position, unsigned level) {
  if (l.prop() >= props_.size()) sync_with_store();
  PropInfo& p = props_[l.prop()];
  if (p.value != LBool::Undef) throw DuplicateAssignment("literal " + store_.to_string(l) + " already assigned");
  p.value = l.negative() ? LBool::False : LBool::True;
  p.level = level;
  p.position = position;
  if (!store_.is_atom(l)) {
    VarId b = store_.bool_var_of(l);
    var_values_[b] = Integer(l.positive() ? 1 : 0);
    vars_[b].assigned = true;
    vars_[b].level = level;
  }
}

void Trail::push_decision(Literal l) {
  level_starts_.push_back(elements_.size());
  assign_literal(l, elements_.size(), level());
  elements_.push_back(TrailElement{ElementKind::DecidedLiteral, l, true, 0, {}, level(), Reason{}});
}

void Trail::push_propagation(Literal l, Reason r) {
  assign_literal(l, elements_.size(), level());
  elements_.push_back(TrailElement{ElementKind::PropagatedLiteral, l, true, 0, {}, level(), r});
}

void Trail::push_model_assignment(VarId x, Integer value, Literal exclusion, bool decision, Reason r) {
  if (x >= vars_.size()) sync_with_store();
  if (vars_[x].assigned) throw DuplicateAssignment("variable " + store_.var_name(x) + " already assigned");
  if (decision) {
    level_starts_.push_back(elements_.size());
    r = Reason{};
  }
  bool owns = assigned_value(exclusion) == LBool::Undef;
  assert(owns || assigned_value(exclusion) == LBool::True);
  if (owns) assign_literal(exclusion, elements_.size(), level());
  vars_[x] = VarInfo{true, level(), exclusion};
  var_values_[x] = value;
  elements_.push_back(TrailElement{ElementKind::ModelAssignment, exclusion, owns, x, std::move(value), level(), r});
}

void Trail::backtrack_to(unsigned target) {
  if (target >= level()) return;
  std::size_t keep = level_starts_[target];
  while (elements_.size() > keep) {
    TrailElement& e = elements_.back();
    if (e.kind == ElementKind::ModelAssignment) {
      cache_.set(e.var, e.value);
      vars_[e.var].assigned = false;
      var_values_[e.var].reset();
    } else if (!store_.is_atom(e.lit)) {
      VarId b = store_.bool_var_of(e.lit);
      cache_.set(b, Integer(e.lit.positive() ? 1 : 0));
      vars_[b].assigned = false;
      var_values_[b].reset();
    }
    if (e.owns_literal) props_[e.lit.prop()].value = LBool::Undef;
    elements_.pop_back();
  }
  level_starts_.resize(target);
}

}  // namespace nia
