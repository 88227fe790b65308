#include "nia/ls_bridge.h"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace nia {

bool LsSchedule::should_run(std::uint64_t conflicts) {
  if (conflicts < next_) return false;
  ++calls_;
  double k = static_cast<double>(calls_);
  next_ += static_cast<std::uint64_t>(std::floor(static_cast<double>(base_) * k * std::pow(std::log10(k + 9), 3)));
  return true;
}

InitialAssignment build_initial_assignment(const TermStore& store, std::span<const VarId> vars, const Trail& trail,
                                           const FeasibilityMap& feasible) {
  InitialAssignment a;
  a.values.assign(store.num_variables(), Integer(0));
  a.fixed.assign(store.num_variables(), true);
  for (VarId x : vars) {
    if (const Integer* v = trail.value_of_var(x)) {
      a.values[x] = *v;
      continue;
    }
    a.fixed[x] = false;
    const auto& cached = trail.cache().get(x);
    if (store.variable(x).sort == Sort::Boolean) {
      a.values[x] = cached ? *cached : Integer(1);
    } else {
      const IntervalSet& f = feasible.get(x);
      a.values[x] = cached && f.contains(*cached) ? *cached : pick_value(f);
    }
  }
  return a;
}

LsFormula build_ls_formula(std::span<const Clause> clauses, const Trail& trail) {
  LsFormula out;
  std::unordered_set<std::uint32_t> seen;
  auto store_unit = [&](Literal l) {
    if (seen.insert(l.code()).second) out.units.push_back(l);
  };
  for (const Clause& c : clauses) {
    Clause kept;
    bool satisfied = false;
    for (Literal l : c) {
      LBool v = trail.value_of_lit(l);
      if (v == LBool::True) {
        store_unit(l);
        satisfied = true;
        break;
      }
      if (v == LBool::False) {
        store_unit(~l);
        continue;
      }
      kept.push_back(l);
    }
    if (!satisfied) out.clauses.push_back(std::move(kept));
  }
  return out;
}

void prepare_ls(LsInstance& out, const TermStore& store, std::span<const Clause> clauses,
                std::span<const VarId> vars, const Trail& trail, const FeasibilityMap& feasible,
                std::size_t budget_per_var, double acc) {
  out.init = build_initial_assignment(store, vars, trail, feasible);
  out.formula = build_ls_formula(clauses, trail);
  out.cost = compile(store, out.formula.clauses, out.formula.units,
                     [&](VarId v) { return trail.value_of_var(v); });
  LsProblem& p = out.problem;
  p = LsProblem{};
  std::size_t n = store.num_variables();
  p.is_bool.resize(n);
  p.feasible.assign(n, IntervalSet::full());
  for (VarId x = 0; x < n; ++x) p.is_bool[x] = store.variable(x).sort == Sort::Boolean;
  for (VarId x : vars) {
    if (out.init.fixed[x]) continue;
    p.vars.push_back(x);
    if (!p.is_bool[x]) p.feasible[x] = feasible.get(x);
  }
  p.initial = out.init.values;
  p.cost = &out.cost;
  p.budget = budget_per_var * p.vars.size();
  p.acc = acc;
}

std::vector<VarId> apply_ls_result(const LsResult& r, const InitialAssignment& init, ValueCache& cache,
                                   std::size_t k) {
  std::vector<VarId> active;
  for (VarId x = 0; x < init.fixed.size(); ++x) {
    if (init.fixed[x]) continue;
    cache.set(x, r.assignment[x]);
    if (r.activity[x] > 0) active.push_back(x);
  }
  std::stable_sort(active.begin(), active.end(), [&](VarId a, VarId b) { return r.activity[a] > r.activity[b]; });
  if (active.size() > k) active.resize(k);
  return active;
}

}  // namespace nia
