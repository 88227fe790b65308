#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nia/feasibility.h"
#include "nia/ls_bridge.h"
#include "nia/term_store.h"
#include "nia/trail.h"

namespace nia {

struct SolverConfig {
  bool ls_enabled = true;
  std::uint64_t ls_threshold_base = 50;
  std::size_t ls_budget_per_var = 100;
  double acc = 1.2;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> max_conflicts;
  std::optional<std::uint64_t> timeout_ms;
  std::size_t ls_top_k = 10;
  double activity_decay = 0.95;
};

enum class Answer : std::uint8_t { Sat, Unsat, Unknown };

const char* answer_name(Answer a);

struct Stats {
  std::uint64_t conflicts = 0;
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;
  std::uint64_t theory_assignments = 0;
  std::uint64_t ls_calls = 0;
  std::uint64_t ls_moves_accepted = 0;
  Answer answer = Answer::Unknown;
  double wall_ms = 0;
};

/// "; key=value" lines in the fixed order conflicts, decisions, propagations,
/// theory_assignments, ls_calls, ls_moves_accepted, answer, wall_ms.
std::string format_stats(const Stats& s);

/// Conflict found by propagation: a clause whose literals are all false on
/// the trail.
struct Conflict {
  enum class Kind : std::uint8_t { FalsifiedClause, EmptyFeasibility, Evaluation } kind;
  Clause clause;
  VarId var = 0;  // EmptyFeasibility
};

/// MCSat search over a clause set: propagate, resolve conflicts by learning
/// entailed clauses, decide. Integer model assignments x -> a carry the atom
/// (x - a = 0) as an exclusion literal, which makes theory conflicts
/// explainable by ordinary clauses.
class Solver {
 public:
  Solver(TermStore& store, const Formula& formula, SolverConfig config = {});

  Answer check_sat();

  /// Value of every store variable after Sat (unconstrained ones get 0).
  std::vector<Integer> model() const;
  const Stats& stats() const { return stats_; }
  std::span<const Clause> learned_lemmas() const { return learned_; }
  const Trail& trail() const { return trail_; }
  const FeasibilityMap& feasibility() const { return feasible_; }
  const TermStore& store() const { return store_; }

  /// Runs propagation to a fixpoint.
  std::optional<Conflict> propagate();
  /// Pushes x -> value as a decision; value must lie in F(x).
  void decide_value(VarId x, const Integer& value);
  void decide_literal(Literal l);

  /// Called after every local-search run.
  using LsObserver = std::function<void(const LsInstance&, const LsResult&)>;
  void set_ls_observer(LsObserver f) { ls_observer_ = std::move(f); }

 private:
  struct WatchedClause {
    Clause lits;
    bool learned = false;
  };

  std::uint32_t add_clause(Clause c, bool learned, bool watch);
  void register_atom(AtomId a);
  Literal exclusion_for(VarId x, const Integer& value);

  std::optional<Conflict> propagate_clauses(Literal became_true);
  std::optional<Conflict> check_atom(AtomId a);
  std::optional<Conflict> visit_var_atoms(VarId x);
  void push_model(VarId x, Integer value, bool decision, Reason r);

  Clause reason_clause(std::size_t trail_pos) const;
  void exclusion_negations(AtomId a, VarId skip, Clause& out) const;
  /// Returns false when the conflict is at level 0.
  bool resolve_conflict(const Conflict& c);
  void backtrack(unsigned level);

  bool decide();
  void run_local_search();

  // activity heap
  void heap_insert(VarId v);
  void heap_up(std::size_t i);
  void heap_down(std::size_t i);
  bool heap_less(VarId a, VarId b) const;
  std::optional<VarId> heap_pop();
  void bump(VarId v);
  bool var_assigned(VarId v) const;
  bool out_of_time() const;

  TermStore& store_;
  SolverConfig config_;
  std::vector<Clause> original_;
  std::vector<VarId> vars_;  // Vars(phi)
  Trail trail_;
  FeasibilityMap feasible_;
  std::vector<WatchedClause> clauses_;
  std::vector<Clause> learned_;
  std::vector<std::vector<std::uint32_t>> watches_;  // by literal code
  std::vector<std::vector<AtomId>> occurs_;            // by variable
  std::vector<bool> registered_;                       // by atom
  std::size_t qhead_ = 0;
  bool trivially_unsat_ = false;

  std::vector<double> activity_;
  double var_inc_ = 1.0;
  std::vector<VarId> heap_;
  std::vector<std::int64_t> heap_pos_;
  std::vector<std::uint32_t> seen_;  // by prop, stamped per conflict
  std::uint32_t stamp_ = 0;

  LsSchedule schedule_;
  LsObserver ls_observer_;
  Stats stats_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace nia
