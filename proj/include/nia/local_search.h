#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "nia/cost.h"
#include "nia/interval_set.h"

namespace nia {

enum class MoveMode : std::uint8_t { BoolFlips, FsJumps, HillClimb };

const char* mode_name(MoveMode m);

struct LsProblem {
  std::vector<VarId> vars;  // non-fixed variables in initial visit order
  std::vector<bool> is_bool;  // indexed by VarId
  std::vector<IntervalSet> feasible;  // indexed by VarId; ignored for Booleans
  std::vector<Integer> initial;  // complete assignment indexed by VarId
  const CostExpr* cost = nullptr;
  std::size_t budget = 0;  // move evaluations; 0 means unlimited
  double acc = 1.2;
};

struct LsResult {
  std::vector<Integer> assignment;
  Integer cost;
  std::vector<Integer> activity;  // cost decrease credited to each variable
  std::size_t moves_tried = 0;
  std::size_t moves_accepted = 0;
  bool reached_zero = false;
  std::vector<Integer> cost_trace;  // initial cost, then the cost after each accepted move
};

/// One evaluated move, reported to an optional observer.
struct MoveEvent {
  MoveMode mode;
  VarId var;
  Integer from;
  Integer to;
  Integer cost_before;
  Integer cost_after;
  bool success;
  double step_size;  // after notify
  bool global_jump;  // fs-jumps only
};

/// Deltas of one accelerated hill-climbing round: round(step * f) for
/// f in {acc, 1/acc, -1/acc, -acc}, half away from zero, zero replaced by the
/// sign of f, duplicates removed.
std::vector<Integer> hill_climb_deltas(double step, double acc);

/// Candidate generator for the three move modes.
class MoveSelector {
 public:
  explicit MoveSelector(const LsProblem& p);

  /// Starts the move loop for x in `mode`.
  void begin(VarId x, MoveMode mode);
  /// Next candidate value for x given its current value, or nullopt when the
  /// move loop for x is over.
  std::optional<Integer> choose(VarId x, const Integer& alpha, MoveMode mode);
  void notify(VarId x, const Integer& alpha, const Integer& alpha_new, MoveMode mode, bool success);

  double step_size(VarId x) const { return step_[x]; }
  bool global_jump_used(VarId x) const { return global_used_[x]; }
  /// Whether the last fs-jump candidate came from the global scan.
  bool last_jump_global() const { return !pending_local_; }

 private:
  std::optional<Integer> choose_hill_climb(VarId x, const Integer& alpha);
  std::optional<Integer> choose_fs_jump(VarId x, const Integer& alpha);

  const LsProblem& p_;
  std::vector<double> step_;
  std::vector<bool> global_used_;

  // Per-visit state.
  bool flip_done_ = false;
  // hill-climb round
  bool round_open_ = false;
  std::vector<std::pair<Integer, double>> round_;  // delta, unrounded step
  std::size_t round_pos_ = 0;
  Integer anchor_;
  double pending_step_ = 1.0;
  bool round_success_ = false;
  double best_step_ = 1.0;
  // fs-jumps
  bool in_global_ = false;
  std::vector<Integer> global_targets_;
  std::size_t global_pos_ = 0;
  int direction_ = -1;  // -1 left, +1 right
  bool tried_other_ = false;
  bool local_done_ = false;
  bool pending_local_ = false;
};

/// Local search main loop: cycles bool-flips, fs-jumps, hill-climb; within a mode visits
/// variables until a full pass brings no improvement or the cost is zero.
LsResult run(const LsProblem& p, const std::function<void(const MoveEvent&)>& observer = nullptr);

}  // namespace nia
