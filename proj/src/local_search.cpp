#include "nia/local_search.h"

#include <algorithm>
#include <cmath>

namespace nia {

const char* mode_name(MoveMode m) {
  switch (m) {
    case MoveMode::BoolFlips: return "bool-flips";
    case MoveMode::FsJumps: return "fs-jumps";
    case MoveMode::HillClimb: return "hill-climb";
  }
  return "?";
}

namespace {

std::vector<std::pair<Integer, double>> hill_climb_round(double step, double acc) {
  std::vector<std::pair<Integer, double>> out;
  for (double f : {acc, 1 / acc, -1 / acc, -acc}) {
    double raw = step * f;
    Integer d(std::round(raw));
    if (d == 0) d = f > 0 ? 1 : -1;
    auto dup = std::find_if(out.begin(), out.end(), [&](const auto& e) { return e.first == d; });
    if (dup == out.end()) {
      out.emplace_back(std::move(d), std::abs(raw));
    } else {
      dup->second = std::max(dup->second, std::abs(raw));
    }
  }
  return out;
}

}  // namespace

std::vector<Integer> hill_climb_deltas(double step, double acc) {
  std::vector<Integer> out;
  for (auto& [d, raw] : hill_climb_round(step, acc)) out.push_back(d);
  return out;
}

MoveSelector::MoveSelector(const LsProblem& p)
    : p_(p), step_(p.initial.size(), 1.0), global_used_(p.initial.size(), false) {}

void MoveSelector::begin(VarId x, MoveMode mode) {
  flip_done_ = false;
  round_open_ = false;
  in_global_ = false;
  global_targets_.clear();
  global_pos_ = 0;
  direction_ = -1;
  tried_other_ = false;
  local_done_ = false;
  if (mode == MoveMode::FsJumps && !p_.is_bool[x] && !global_used_[x]) {
    global_used_[x] = true;
    in_global_ = true;
  }
}

std::optional<Integer> MoveSelector::choose(VarId x, const Integer& alpha, MoveMode mode) {
  bool b = p_.is_bool[x];
  switch (mode) {
    case MoveMode::BoolFlips:
      if (!b || flip_done_) return std::nullopt;
      flip_done_ = true;
      return Integer(alpha == 0 ? 1 : 0);
    case MoveMode::FsJumps: return b ? std::nullopt : choose_fs_jump(x, alpha);
    case MoveMode::HillClimb: return b ? std::nullopt : choose_hill_climb(x, alpha);
  }
  return std::nullopt;
}

std::optional<Integer> MoveSelector::choose_hill_climb(VarId x, const Integer& alpha) {
  const IntervalSet& f = p_.feasible[x];
  for (;;) {
    if (!round_open_) {
      round_open_ = true;
      round_ = hill_climb_round(step_[x], p_.acc);
      round_pos_ = 0;
      round_success_ = false;
      anchor_ = alpha;
    }
    while (round_pos_ < round_.size()) {
      const auto& [d, raw] = round_[round_pos_++];
      Integer v = anchor_ + d;
      if (!f.contains(v)) continue;
      pending_step_ = raw;
      return v;
    }
    round_open_ = false;
    if (!round_success_) {
      step_[x] = std::max(1.0, step_[x] / p_.acc);
      return std::nullopt;
    }
    // Later successes in a round improve on earlier ones, so the last one is the best.
    step_[x] = std::max(1.0, best_step_);
  }
}

std::optional<Integer> MoveSelector::choose_fs_jump(VarId x, const Integer& alpha) {
  const IntervalSet& f = p_.feasible[x];
  if (in_global_) {
    if (global_targets_.empty() && global_pos_ == 0) {
      for (const Interval& i : f.intervals()) {
        if (!i.contains(alpha)) global_targets_.push_back(pick_value(i));
      }
    }
    if (global_pos_ < global_targets_.size()) {
      pending_local_ = false;
      return global_targets_[global_pos_++];
    }
    in_global_ = false;
  }
  if (local_done_) return std::nullopt;
  Neighborhood nb = containing_and_neighbors(f, alpha);
  for (;;) {
    const std::optional<std::size_t>& side = direction_ < 0 ? nb.left : nb.right;
    if (side) {
      pending_local_ = true;
      return pick_value(f.intervals()[*side]);
    }
    if (tried_other_) return std::nullopt;
    tried_other_ = true;
    direction_ = -direction_;
  }
}

void MoveSelector::notify(VarId, const Integer&, const Integer&, MoveMode mode, bool success) {
  if (mode == MoveMode::HillClimb) {
    if (success) {
      round_success_ = true;
      best_step_ = pending_step_;
    }
    return;
  }
  if (mode != MoveMode::FsJumps) return;
  if (!pending_local_) {
    if (success) in_global_ = false;
    return;
  }
  if (success) {
    tried_other_ = false;
  } else if (!tried_other_) {
    tried_other_ = true;
    direction_ = -direction_;
  } else {
    local_done_ = true;
  }
}

LsResult run(const LsProblem& p, const std::function<void(const MoveEvent&)>& observer) {
  CostEvaluator eval(*p.cost, p.initial);
  LsResult r;
  r.cost = eval.cost();
  r.activity.assign(p.initial.size(), Integer(0));
  r.cost_trace.push_back(r.cost);
  std::vector<VarId> vars = p.vars;
  MoveSelector sel(p);
  auto out_of_budget = [&] { return p.budget != 0 && r.moves_tried >= p.budget; };

  for (MoveMode mode : {MoveMode::BoolFlips, MoveMode::FsJumps, MoveMode::HillClimb}) {
    std::size_t n_vars = 0;
    while (n_vars < vars.size() && r.cost != 0 && !out_of_budget()) {
      VarId x = vars[n_vars];
      sel.begin(x, mode);
      bool improved = false;
      while (r.cost != 0 && !out_of_budget()) {
        Integer alpha = eval.assignment()[x];
        std::optional<Integer> next = sel.choose(x, alpha, mode);
        if (!next) break;
        Integer cost_new = eval.cost_if(x, *next);
        ++r.moves_tried;
        bool success = cost_new < r.cost;
        Integer before = r.cost;
        if (success) {
          eval.assign(x, *next);
          r.activity[x] += r.cost - cost_new;
          r.cost = cost_new;
          ++r.moves_accepted;
          r.cost_trace.push_back(r.cost);
          improved = true;
          auto it = std::find(vars.begin(), vars.end(), x);
          std::rotate(vars.begin(), it, it + 1);
        }
        bool global = mode == MoveMode::FsJumps && sel.last_jump_global();
        sel.notify(x, alpha, *next, mode, success);
        if (observer) observer(MoveEvent{mode, x, alpha, *next, before, cost_new, success, sel.step_size(x), global});
      }
      // An improvement moved x to the front; the scan restarts there.
      n_vars = improved ? 0 : n_vars + 1;
    }
  }
  r.assignment = eval.assignment();
  r.reached_zero = r.cost == 0;
  return r;
}

}  // namespace nia
