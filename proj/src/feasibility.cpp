#include "nia/feasibility.h"

#include <algorithm>
#include <cassert>

#include "nia/univariate.h"

namespace nia {

IntervalSet unit_solutions(VarId x, Literal lit, const Trail& trail, const TermStore& store) {
  const Atom& atom = store.atom(store.atom_of(lit));
  Polynomial p = atom.lhs.substitute([&](VarId v) { return v == x ? nullptr : trail.value_of_var(v); });
  assert(p.variables().size() <= 1);
  IntervalSet s = solve_univariate(p, x, atom.rel);
  return lit.negative() ? s.complement() : s;
}

void FeasibilityMap::resize(std::size_t num_vars) {
  if (sets_.size() < num_vars) {
    sets_.resize(num_vars, IntervalSet::full());
    contribs_.resize(num_vars);
  }
}

const IntervalSet& FeasibilityMap::get(VarId x) const {
  static const IntervalSet full = IntervalSet::full();
  return x < sets_.size() ? sets_[x] : full;
}

std::span<const Contribution> FeasibilityMap::contributions(VarId x) const {
  if (x >= contribs_.size()) return {};
  return contribs_[x];
}

UnitResult FeasibilityMap::assert_unit_constraint(VarId x, Literal lit, const Trail& trail, const TermStore& store) {
  return restrict(x, lit, unit_solutions(x, lit, trail, store), trail.level());
}

UnitResult FeasibilityMap::restrict(VarId x, Literal lit, IntervalSet solutions, unsigned level) {
  resize(x + 1);
  IntervalSet next = sets_[x].intersect(solutions);
  if (next == sets_[x]) return {UnitOutcome::Updated, std::nullopt};
  undo_.push_back(Undo{level, x, std::move(sets_[x])});
  sets_[x] = std::move(next);
  contribs_[x].push_back(Contribution{lit, std::move(solutions)});
  if (sets_[x].is_empty()) return {UnitOutcome::Conflict, std::nullopt};
  if (auto v = sets_[x].singleton_value()) return {UnitOutcome::Singleton, std::move(v)};
  return {UnitOutcome::Updated, std::nullopt};
}

void FeasibilityMap::backtrack_to(unsigned level) {
  while (!undo_.empty() && undo_.back().level > level) {
    Undo& u = undo_.back();
    sets_[u.var] = std::move(u.previous);
    contribs_[u.var].pop_back();
    undo_.pop_back();
  }
}

template <class Pred>
std::vector<Literal> FeasibilityMap::explain(VarId x, Pred done) const {
  const auto& cs = contribs_[x];
  // prefix[i] = intersection of the first i contributions.
  std::vector<IntervalSet> prefix;
  prefix.reserve(cs.size() + 1);
  prefix.push_back(IntervalSet::full());
  for (const auto& c : cs) prefix.push_back(prefix.back().intersect(c.solutions));
  assert(done(prefix.back()));

  IntervalSet kept = IntervalSet::full();
  std::vector<Literal> out;
  for (std::size_t i = cs.size(); i-- > 0;) {
    if (done(prefix[i].intersect(kept))) continue;
    kept = kept.intersect(cs[i].solutions);
    out.push_back(cs[i].lit);
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<Literal> FeasibilityMap::explain_empty(VarId x) const {
  return explain(x, [](const IntervalSet& s) { return s.is_empty(); });
}

std::vector<Literal> FeasibilityMap::explain_singleton(VarId x, const Integer& value) const {
  return explain(x, [&](const IntervalSet& s) {
    return s.is_empty() || (s.size() == 1 && s.singleton_value() == value);
  });
}

}  // namespace nia
