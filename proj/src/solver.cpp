#include "nia/solver.h"

#include <algorithm>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

namespace nia {

const char* answer_name(Answer a) {
  switch (a) {
    case Answer::Sat: return "sat";
    case Answer::Unsat: return "unsat";
    case Answer::Unknown: return "unknown";
  }
  return "unknown";
}

std::string format_stats(const Stats& s) {
  std::ostringstream os;
  os << "; conflicts=" << s.conflicts << "\n"
     << "; decisions=" << s.decisions << "\n"
     << "; propagations=" << s.propagations << "\n"
     << "; theory_assignments=" << s.theory_assignments << "\n"
     << "; ls_calls=" << s.ls_calls << "\n"
     << "; ls_moves_accepted=" << s.ls_moves_accepted << "\n"
     << "; answer=" << answer_name(s.answer) << "\n"
     << "; wall_ms=" << static_cast<std::uint64_t>(s.wall_ms) << "\n";
  return os.str();
}

namespace {
constexpr VarId kNoVar = std::numeric_limits<VarId>::max();
}

Solver::Solver(TermStore& store, const Formula& formula, SolverConfig config)
    : store_(store),
      config_(config),
      original_(formula.clauses),
      vars_(formula.variables),
      trail_(store),
      schedule_(config.ls_threshold_base) {
  std::size_t n = store_.num_variables();
  occurs_.resize(n);
  feasible_.resize(n);
  activity_.assign(n, 0.0);
  heap_pos_.assign(n, -1);
  if (config_.seed != 0) {
    std::mt19937_64 rng(config_.seed);
    std::uniform_real_distribution<double> jitter(0.0, 1e-3);
    for (VarId v : vars_) activity_[v] = jitter(rng);
  }
  for (VarId v : vars_) heap_insert(v);

  std::vector<AtomId> constants;
  for (const Clause& c : original_) {
    for (Literal l : c) {
      if (!store_.is_atom(l)) continue;
      AtomId a = store_.atom_of(l);
      register_atom(a);
      if (store_.atom_variables(a).empty()) constants.push_back(a);
    }
  }
  watches_.resize(2 * store_.num_props());
  trail_.sync_with_store();
  for (const Clause& c : original_) {
    if (c.empty()) {
      trivially_unsat_ = true;
      continue;
    }
    std::uint32_t idx = add_clause(c, false, c.size() >= 2);
    if (c.size() == 1) {
      LBool v = trail_.assigned_value(c[0]);
      if (v == LBool::False) trivially_unsat_ = true;
      if (v == LBool::Undef) {
        trail_.push_propagation(c[0], Reason{Reason::Kind::Clause, idx});
        ++stats_.propagations;
      }
    }
  }
  for (AtomId a : constants) {
    if (check_atom(a)) trivially_unsat_ = true;
  }
}

std::uint32_t Solver::add_clause(Clause c, bool learned, bool watch) {
  auto idx = static_cast<std::uint32_t>(clauses_.size());
  if (watch) {
    watches_[c[0].code()].push_back(idx);
    watches_[c[1].code()].push_back(idx);
  }
  clauses_.push_back(WatchedClause{std::move(c), learned});
  return idx;
}

void Solver::register_atom(AtomId a) {
  if (registered_.size() <= a) registered_.resize(a + 1, false);
  if (registered_[a]) return;
  registered_[a] = true;
  for (VarId v : store_.atom_variables(a)) occurs_[v].push_back(a);
}

Literal Solver::exclusion_for(VarId x, const Integer& value) {
  Literal l = store_.atom_literal(Polynomial::variable(x), Relation::EQ, Polynomial(value));
  register_atom(store_.atom_of(l));
  if (watches_.size() < 2 * store_.num_props()) watches_.resize(2 * store_.num_props());
  trail_.sync_with_store();
  return l;
}

void Solver::push_model(VarId x, Integer value, bool decision, Reason r) {
  Literal e = exclusion_for(x, value);
  trail_.push_model_assignment(x, std::move(value), e, decision, r);
  ++stats_.theory_assignments;
  if (!decision) ++stats_.propagations;
}

std::optional<Conflict> Solver::propagate() {
  while (qhead_ < trail_.size()) {
    const TrailElement& e = trail_[qhead_++];
    ElementKind kind = e.kind;
    Literal lit = e.lit;
    bool owns = e.owns_literal;
    VarId var = e.var;
    if (owns) {
      if (auto c = propagate_clauses(lit)) return c;
      if (store_.is_atom(lit)) {
        if (auto c = check_atom(store_.atom_of(lit))) return c;
      }
    }
    if (kind == ElementKind::ModelAssignment) {
      if (auto c = visit_var_atoms(var)) return c;
    }
  }
  return std::nullopt;
}

std::optional<Conflict> Solver::propagate_clauses(Literal became_true) {
  Literal f = ~became_true;
  if (f.code() >= watches_.size()) return std::nullopt;
  auto& ws = watches_[f.code()];
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < ws.size()) {
    std::uint32_t ci = ws[i++];
    Clause& c = clauses_[ci].lits;
    if (c[0] == f) std::swap(c[0], c[1]);
    if (trail_.assigned_value(c[0]) == LBool::True) {
      ws[j++] = ci;
      continue;
    }
    bool moved = false;
    for (std::size_t k = 2; k < c.size(); ++k) {
      if (trail_.assigned_value(c[k]) != LBool::False) {
        std::swap(c[1], c[k]);
        watches_[c[1].code()].push_back(ci);
        moved = true;
        break;
      }
    }
    if (moved) continue;
    ws[j++] = ci;
    if (trail_.assigned_value(c[0]) == LBool::False) {
      while (i < ws.size()) ws[j++] = ws[i++];
      ws.resize(j);
      return Conflict{Conflict::Kind::FalsifiedClause, c};
    }
    trail_.push_propagation(c[0], Reason{Reason::Kind::Clause, ci});
    ++stats_.propagations;
  }
  ws.resize(j);
  return std::nullopt;
}

void Solver::exclusion_negations(AtomId a, VarId skip, Clause& out) const {
  for (VarId z : store_.atom_variables(a)) {
    if (z == skip) continue;
    Literal n = ~trail_.exclusion_literal(z);
    if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
  }
}

std::optional<Conflict> Solver::check_atom(AtomId a) {
  auto vars = store_.atom_variables(a);
  std::size_t unassigned = 0;
  VarId x = kNoVar;
  for (VarId v : vars) {
    if (trail_.value_of_var(v) == nullptr) {
      ++unassigned;
      x = v;
    }
  }
  if (unassigned > 1) return std::nullopt;
  Literal pos = store_.atom_positive(a);
  LBool cur = trail_.assigned_value(pos);

  if (unassigned == 0) {
    const Atom& atom = store_.atom(a);
    bool holds = relation_holds(atom.rel, atom.lhs.evaluate([this](VarId v) { return trail_.value_of_var(v); }));
    Literal t = holds ? pos : ~pos;
    if (cur == LBool::Undef) {
      trail_.push_propagation(t, Reason{Reason::Kind::Evaluation, 0});
      ++stats_.propagations;
      return std::nullopt;
    }
    if ((cur == LBool::True) == holds) return std::nullopt;
    Clause c{t};
    exclusion_negations(a, kNoVar, c);
    return Conflict{Conflict::Kind::Evaluation, std::move(c)};
  }

  if (cur == LBool::Undef) return std::nullopt;
  Literal lit = cur == LBool::True ? pos : ~pos;
  UnitResult res = feasible_.assert_unit_constraint(x, lit, trail_, store_);
  if (res.outcome == UnitOutcome::Updated) return std::nullopt;

  auto explanation = res.outcome == UnitOutcome::Conflict ? feasible_.explain_empty(x)
                                                          : feasible_.explain_singleton(x, *res.value);
  Clause c;
  for (Literal l : explanation) {
    c.push_back(~l);
    exclusion_negations(store_.atom_of(l), x, c);
  }
  if (res.outcome == UnitOutcome::Conflict) return Conflict{Conflict::Kind::EmptyFeasibility, std::move(c), x};

  Literal e = exclusion_for(x, *res.value);
  c.push_back(e);
  if (trail_.assigned_value(e) == LBool::False) return Conflict{Conflict::Kind::FalsifiedClause, std::move(c)};
  std::uint32_t idx = add_clause(std::move(c), false, false);
  push_model(x, *res.value, false, Reason{Reason::Kind::FeasibilitySingleton, idx});
  return std::nullopt;
}

std::optional<Conflict> Solver::visit_var_atoms(VarId x) {
  auto& occ = occurs_[x];
  for (std::size_t i = 0; i < occ.size();) {
    AtomId a = occ[i];
    if (store_.atom_variables(a).size() == 1) {
      // A processed level-0 bound on x alone is already part of F(x) for good.
      Literal pos = store_.atom_positive(a);
      if (trail_.is_assigned(pos) && trail_.level_of(pos) == 0 && trail_.position_of(pos) < qhead_) {
        occ[i] = occ.back();
        occ.pop_back();
        continue;
      }
    }
    if (auto c = check_atom(a)) return c;
    ++i;
  }
  return std::nullopt;
}

Clause Solver::reason_clause(std::size_t pos) const {
  const TrailElement& e = trail_[pos];
  switch (e.reason.kind) {
    case Reason::Kind::Clause:
    case Reason::Kind::FeasibilitySingleton: return clauses_[e.reason.clause].lits;
    case Reason::Kind::Evaluation: {
      Clause r{e.lit};
      exclusion_negations(store_.atom_of(e.lit), kNoVar, r);
      return r;
    }
    case Reason::Kind::Decision: break;
  }
  return Clause{e.lit};
}

bool Solver::resolve_conflict(const Conflict& conflict) {
  unsigned max_level = 0;
  for (Literal l : conflict.clause) max_level = std::max(max_level, trail_.level_of(l));
  if (max_level == 0) return false;
  if (max_level < trail_.level()) backtrack(max_level);

  if (seen_.size() < store_.num_props()) seen_.resize(store_.num_props(), 0);
  ++stamp_;
  Clause learnt{Literal()};
  int path = 0;
  auto add = [&](Literal q) {
    PropId p = q.prop();
    if (seen_[p] == stamp_) return;
    unsigned lv = trail_.level_of(q);
    if (lv == 0) return;
    seen_[p] = stamp_;
    for (VarId v : store_.literal_variables(q)) bump(v);
    if (lv == max_level) {
      ++path;
    } else {
      learnt.push_back(q);
    }
  };
  for (Literal q : conflict.clause) add(q);

  std::size_t idx = trail_.size();
  Literal uip;
  for (;;) {
    do {
      --idx;
    } while (!(trail_[idx].owns_literal && seen_[trail_[idx].lit.prop()] == stamp_));
    uip = trail_[idx].lit;
    if (--path == 0) break;
    for (Literal q : reason_clause(idx)) {
      if (q != uip) add(q);
    }
  }
  learnt[0] = ~uip;

  unsigned back = 0;
  for (std::size_t i = 1; i < learnt.size(); ++i) {
    unsigned lv = trail_.level_of(learnt[i]);
    if (lv > back) {
      back = lv;
      std::swap(learnt[1], learnt[i]);
    }
  }
  backtrack(back);
  learned_.push_back(learnt);
  std::uint32_t ci = add_clause(learnt, true, learnt.size() >= 2);
  trail_.push_propagation(learnt[0], Reason{Reason::Kind::Clause, ci});
  ++stats_.propagations;
  var_inc_ /= config_.activity_decay;
  return true;
}

void Solver::backtrack(unsigned level) {
  if (level >= trail_.level()) return;
  std::vector<VarId> freed;
  for (std::size_t i = trail_.size(); i-- > 0 && trail_[i].level > level;) {
    const TrailElement& e = trail_[i];
    if (e.kind == ElementKind::ModelAssignment) {
      freed.push_back(e.var);
    } else if (!store_.is_atom(e.lit)) {
      freed.push_back(store_.bool_var_of(e.lit));
    }
  }
  trail_.backtrack_to(level);
  feasible_.backtrack_to(level);
  qhead_ = std::min(qhead_, trail_.size());
  for (VarId v : freed) heap_insert(v);
}

void Solver::decide_value(VarId x, const Integer& value) {
  push_model(x, value, true, Reason{});
  ++stats_.decisions;
}

void Solver::decide_literal(Literal l) {
  trail_.push_decision(l);
  ++stats_.decisions;
}

bool Solver::var_assigned(VarId v) const { return trail_.value_of_var(v) != nullptr; }

bool Solver::decide() {
  while (auto v = heap_pop()) {
    VarId x = *v;
    if (var_assigned(x)) continue;
    const auto& cached = trail_.cache().get(x);
    if (store_.variable(x).sort == Sort::Boolean) {
      Literal l = store_.bool_literal(x);
      decide_literal(cached && *cached == 0 ? ~l : l);
    } else {
      decide_value(x, pick_value(feasible_.get(x), cached));
    }
    return true;
  }
  return false;
}

void Solver::run_local_search() {
  LsInstance inst;
  prepare_ls(inst, store_, original_, vars_, trail_, feasible_, config_.ls_budget_per_var, config_.acc);
  LsResult r = run(inst.problem);
  stats_.ls_moves_accepted += r.moves_accepted;
  for (VarId v : apply_ls_result(r, inst.init, trail_.cache(), config_.ls_top_k)) bump(v);
  if (ls_observer_) ls_observer_(inst, r);
}

bool Solver::out_of_time() const {
  if (!config_.timeout_ms) return false;
  auto elapsed = std::chrono::steady_clock::now() - start_;
  return std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count() >=
         static_cast<std::int64_t>(*config_.timeout_ms);
}

Answer Solver::check_sat() {
  start_ = std::chrono::steady_clock::now();
  auto finish = [&](Answer a) {
    stats_.answer = a;
    stats_.ls_calls = schedule_.ls_calls();
    stats_.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    return a;
  };
  if (trivially_unsat_) return finish(Answer::Unsat);

  for (;;) {
    if (auto c = propagate()) {
      bool at_root = std::all_of(c->clause.begin(), c->clause.end(),
                                 [&](Literal l) { return trail_.level_of(l) == 0; });
      if (at_root) return finish(Answer::Unsat);
      if (config_.max_conflicts && stats_.conflicts >= *config_.max_conflicts) return finish(Answer::Unknown);
      if (out_of_time()) return finish(Answer::Unknown);
      if (!resolve_conflict(*c)) return finish(Answer::Unsat);
      ++stats_.conflicts;
      continue;
    }
    if (config_.ls_enabled && schedule_.should_run(stats_.conflicts)) run_local_search();
    if (out_of_time()) return finish(Answer::Unknown);
    if (!decide()) {
      std::vector<Integer> m = model();
      for (const Clause& c : original_) {
        if (!store_.evaluate(c, m)) throw std::logic_error("model violates clause " + store_.to_string(c));
      }
      return finish(Answer::Sat);
    }
  }
}

std::vector<Integer> Solver::model() const {
  std::vector<Integer> m(store_.num_variables(), Integer(0));
  for (VarId v = 0; v < m.size(); ++v) {
    if (const Integer* val = trail_.value_of_var(v)) m[v] = *val;
  }
  return m;
}

bool Solver::heap_less(VarId a, VarId b) const {
  if (activity_[a] != activity_[b]) return activity_[a] > activity_[b];
  return a < b;
}

void Solver::heap_insert(VarId v) {
  if (heap_pos_[v] >= 0) return;
  heap_pos_[v] = static_cast<std::int64_t>(heap_.size());
  heap_.push_back(v);
  heap_up(heap_.size() - 1);
}

void Solver::heap_up(std::size_t i) {
  VarId v = heap_[i];
  while (i > 0) {
    std::size_t parent = (i - 1) / 2;
    if (!heap_less(v, heap_[parent])) break;
    heap_[i] = heap_[parent];
    heap_pos_[heap_[i]] = static_cast<std::int64_t>(i);
    i = parent;
  }
  heap_[i] = v;
  heap_pos_[v] = static_cast<std::int64_t>(i);
}

void Solver::heap_down(std::size_t i) {
  VarId v = heap_[i];
  for (;;) {
    std::size_t child = 2 * i + 1;
    if (child >= heap_.size()) break;
    if (child + 1 < heap_.size() && heap_less(heap_[child + 1], heap_[child])) ++child;
    if (!heap_less(heap_[child], v)) break;
    heap_[i] = heap_[child];
    heap_pos_[heap_[i]] = static_cast<std::int64_t>(i);
    i = child;
  }
  heap_[i] = v;
  heap_pos_[v] = static_cast<std::int64_t>(i);
}

std::optional<VarId> Solver::heap_pop() {
  if (heap_.empty()) return std::nullopt;
  VarId top = heap_[0];
  heap_pos_[top] = -1;
  VarId last = heap_.back();
  heap_.pop_back();
  if (!heap_.empty()) {
    heap_[0] = last;
    heap_pos_[last] = 0;
    heap_down(0);
  }
  return top;
}

void Solver::bump(VarId v) {
  activity_[v] += var_inc_;
  if (activity_[v] > 1e100) {
    for (double& a : activity_) a *= 1e-100;
    var_inc_ *= 1e-100;
  }
  if (heap_pos_[v] >= 0) heap_up(static_cast<std::size_t>(heap_pos_[v]));
}

}  // namespace nia
