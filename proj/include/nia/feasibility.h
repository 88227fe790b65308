#pragma once

#include <optional>
#include <span>
#include <vector>

#include "nia/interval_set.h"
#include "nia/term_store.h"
#include "nia/trail.h"

namespace nia {

enum class UnitOutcome : std::uint8_t { Updated, Singleton, Conflict };

struct UnitResult {
  UnitOutcome outcome;
  std::optional<Integer> value;  // for Singleton
};

/// A literal that narrowed F(x), with the solution set it contributed
/// (computed under the model values current at the time).
struct Contribution {
  Literal lit;
  IntervalSet solutions;
};

/// Feasibility sets F_M(x) of the integer variables, narrowed by unit
/// constraints and restored exactly on backtracking.
class FeasibilityMap {
 public:
  void resize(std::size_t num_vars);

  const IntervalSet& get(VarId x) const;
  std::span<const Contribution> contributions(VarId x) const;

  /// Narrows F(x) by `lit`, whose atom must have x as its only variable
  /// without a model assignment in `trail`.
  UnitResult assert_unit_constraint(VarId x, Literal lit, const Trail& trail, const TermStore& store);

  /// Intersects a precomputed solution set into F(x).
  UnitResult restrict(VarId x, Literal lit, IntervalSet solutions, unsigned level);

  void backtrack_to(unsigned level);

  /// Irredundant subset of the contributions whose intersection is empty.
  std::vector<Literal> explain_empty(VarId x) const;
  /// Irredundant subset of the contributions whose intersection is {value}.
  std::vector<Literal> explain_singleton(VarId x, const Integer& value) const;

 private:
  struct Undo {
    unsigned level;
    VarId var;
    IntervalSet previous;
  };

  template <class Pred>
  std::vector<Literal> explain(VarId x, Pred done) const;

  std::vector<IntervalSet> sets_;
  std::vector<std::vector<Contribution>> contribs_;
  std::vector<Undo> undo_;
};

/// Integer solutions of a literal that is unit in x under the trail values.
IntervalSet unit_solutions(VarId x, Literal lit, const Trail& trail, const TermStore& store);

}  // namespace nia
