#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "nia/feasibility.h"
#include "nia/local_search.h"
#include "nia/term_store.h"
#include "nia/trail.h"

namespace nia {

/// Conflict-count schedule for local-search calls: the first call fires at
/// `base` conflicts, call k+1 fires floor(base * k * log10(k + 9)^3)
/// conflicts after call k's threshold.
class LsSchedule {
 public:
  explicit LsSchedule(std::uint64_t base = 50) : base_(base), next_(base) {}

  std::uint64_t next_threshold() const { return next_; }
  std::uint64_t ls_calls() const { return calls_; }
  /// True (and advances the schedule) when `conflicts` reached the threshold.
  bool should_run(std::uint64_t conflicts);

 private:
  std::uint64_t base_;
  std::uint64_t next_;
  std::uint64_t calls_ = 0;
};

struct InitialAssignment {
  std::vector<Integer> values;  // indexed by VarId
  std::vector<bool> fixed;      // indexed by VarId
};

/// Initial assignment for local search. Variables outside `vars` get 0 and count as fixed.
InitialAssignment build_initial_assignment(const TermStore& store, std::span<const VarId> vars, const Trail& trail,
                                           const FeasibilityMap& feasible);

struct LsFormula {
  std::vector<Clause> clauses;
  std::vector<Literal> units;  // duplicate-free
};

/// Local-search formula: clauses with a true literal are replaced by that literal as a
/// unit, false literals are dropped from their clause and conjoined negated.
LsFormula build_ls_formula(std::span<const Clause> clauses, const Trail& trail);

/// Builds the complete local-search problem for the current trail.
struct LsInstance {
  InitialAssignment init;
  LsFormula formula;
  CostExpr cost;
  LsProblem problem;
};
void prepare_ls(LsInstance& out, const TermStore& store, std::span<const Clause> clauses,
                std::span<const VarId> vars, const Trail& trail, const FeasibilityMap& feasible,
                std::size_t budget_per_var, double acc);

/// Writes mu* of every non-fixed variable into the value cache and returns
/// the (at most k) variables with the highest positive activity, most active
/// first.
std::vector<VarId> apply_ls_result(const LsResult& r, const InitialAssignment& init, ValueCache& cache,
                                   std::size_t k);

}  // namespace nia
