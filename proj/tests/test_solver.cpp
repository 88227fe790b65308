#include <doctest.h>

#include <random>

#include "nia/smtlib.h"
#include "nia/solver.h"
#include "support.h"

using namespace nia;

namespace {

const char* kReciprocal =
    "(declare-fun x () Int)(declare-fun y () Int)(declare-fun z () Int)"
    "(assert (or (not (>= x 1)) (= (* x y) 1)))"
    "(assert (or (not (= (* x y) 1)) (> (+ x (* 2 y z)) 0)))"
    "(assert (> (* z z) 1))";

struct Instance {
  Script s;
  Formula f;
  explicit Instance(const std::string& text) : s(parse(text)), f(clausify(*s.store, s.assertions)) {}
};

std::vector<long> to_longs(const std::vector<Integer>& m, std::size_t n) {
  std::vector<long> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(m[i].get_si());
  return v;
}

}  // namespace

TEST_CASE("reciprocal instance is sat with a verifying model") {
  for (bool ls : {true, false}) {
    Instance in(kReciprocal);
    SolverConfig cfg;
    cfg.ls_enabled = ls;
    Solver s(*in.s.store, in.f, cfg);
    REQUIRE(s.check_sat() == Answer::Sat);
    auto m = s.model();
    long x = m[0].get_si(), y = m[1].get_si(), z = m[2].get_si();
    CHECK((!(x >= 1) || x * y == 1));
    CHECK((x * y != 1 || x + 2 * y * z > 0));
    CHECK(z * z > 1);
  }
}

TEST_CASE("reciprocal instance replay propagates y -> 1 from a singleton feasibility set") {
  Instance in(kReciprocal);
  Solver s(*in.s.store, in.f);
  CHECK_FALSE(s.propagate().has_value());
  CHECK(s.feasibility().get(2) == IntervalSet::at_most(Integer(-2)).unite(IntervalSet::at_least(Integer(2))));
  s.decide_value(0, Integer(1));
  CHECK_FALSE(s.propagate().has_value());
  bool found = false;
  for (const TrailElement& e : s.trail().elements()) {
    if (e.kind == ElementKind::ModelAssignment && e.var == 1) {
      CHECK(e.value == 1);
      CHECK(e.reason.kind == Reason::Kind::FeasibilitySingleton);
      found = true;
    }
  }
  CHECK(found);
  CHECK(s.feasibility().get(1) == IntervalSet::point(Integer(1)));
}

TEST_CASE("simple unsat instances") {
  for (const char* text : {"(declare-fun x () Int)(assert (< (* x x) 0))", "(assert false)",
                           "(declare-fun x () Int)(assert (= (* x x) 2))",
                           "(declare-fun x () Int)(declare-fun y () Int)(assert (= (* 2 x) (+ (* 2 y) 1)))(assert (<= 0 x 5))(assert (<= 0 y 5))",
                           "(declare-fun x () Int)(assert (> x 3))(assert (< (* x x) 10))"}) {
    Instance in(text);
    Solver s(*in.s.store, in.f);
    CHECK_MESSAGE(s.check_sat() == Answer::Unsat, text);
  }
}

TEST_CASE("a conflict limit yields unknown") {
  Instance in(
      "(declare-fun x () Int)(declare-fun y () Int)"
      "(assert (and (<= x 1000000) (>= x (- 1000000)) (<= y 1000000) (>= y (- 1000000))))"
      "(assert (>= (* x y) 100000000000))");
  SolverConfig cfg;
  cfg.ls_enabled = false;
  cfg.max_conflicts = 50;
  Solver s(*in.s.store, in.f, cfg);
  CHECK(s.check_sat() == Answer::Unknown);
  CHECK(s.stats().conflicts == 50);
}

TEST_CASE("local search runs on schedule and feeds the value cache") {
  Instance in(
      "(declare-fun x () Int)(declare-fun y () Int)"
      "(assert (and (<= x 1000000) (>= x (- 1000000)) (<= y 1000000) (>= y (- 1000000))))"
      "(assert (>= (* x y) 100000000000))");
  Solver s(*in.s.store, in.f);
  int calls = 0;
  s.set_ls_observer([&](const LsInstance& inst, const LsResult& r) {
    ++calls;
    CHECK(r.cost <= r.cost_trace.front());
    CHECK(inst.problem.budget == 100 * inst.problem.vars.size());
    for (VarId v : inst.problem.vars) CHECK(s.trail().cache().get(v) == r.assignment[v]);
  });
  REQUIRE(s.check_sat() == Answer::Sat);
  CHECK(calls >= 1);
  CHECK(s.stats().ls_calls == static_cast<std::uint64_t>(calls));
  auto m = s.model();
  CHECK(m[0] * m[1] >= Integer("100000000000"));
}

TEST_CASE("random boxed instances agree with enumeration; lemmas are entailed") {
  std::mt19937_64 rng(61);
  nia_test::GenParams gp;
  gp.boxed = true;
  gp.cnf_only = true;
  gp.max_ints = 3;
  gp.max_bools = 2;
  gp.lo = -4;
  gp.hi = 4;
  gp.max_clauses = 8;
  int sat = 0, unsat = 0;
  for (int iter = 0; iter < 150; ++iter) {
    nia_test::RefFormula rf = nia_test::random_formula(rng, gp);
    bool want = nia_test::count_models(rf, 1) > 0;
    (want ? sat : unsat)++;
    for (bool ls : {true, false}) {
      Instance in(rf.smtlib());
      SolverConfig cfg;
      cfg.ls_enabled = ls;
      cfg.ls_threshold_base = 2;
      Solver s(*in.s.store, in.f, cfg);
      Answer a = s.check_sat();
      REQUIRE_MESSAGE(a == (want ? Answer::Sat : Answer::Unsat), rf.smtlib());
      if (a == Answer::Sat) CHECK(rf.eval(to_longs(s.model(), rf.num_vars())));
      const TermStore& st = *in.s.store;
      std::vector<Integer> asg(st.num_variables());
      for (const Clause& lemma : s.learned_lemmas()) {
        nia_test::enumerate(rf.n_int, rf.n_bool, rf.lo, rf.hi, [&](const std::vector<long>& v) {
          if (!rf.eval(v)) return true;
          for (std::size_t i = 0; i < v.size(); ++i) asg[i] = v[i];
          if (!st.evaluate(lemma, asg)) FAIL("lemma " << st.to_string(lemma) << " not entailed\n" << rf.smtlib());
          return true;
        });
      }
    }
  }
  CHECK(sat > 10);
  CHECK(unsat > 10);
}

TEST_CASE("a fixed seed gives identical runs") {
  auto once = [](std::uint64_t seed) {
    Instance in(
        "(declare-fun x () Int)(declare-fun y () Int)(declare-fun z () Int)"
        "(assert (and (<= x 1000) (>= x (- 1000)) (<= y 1000) (>= y (- 1000))))"
        "(assert (= (+ (* x y) z) 777))(assert (> (* z z) 50))");
    SolverConfig cfg;
    cfg.seed = seed;
    Solver s(*in.s.store, in.f, cfg);
    Answer a = s.check_sat();
    Stats st = s.stats();
    return std::tuple(a, s.model(), st.conflicts, st.decisions, st.propagations, st.theory_assignments, st.ls_calls);
  };
  CHECK(once(7) == once(7));
  CHECK(std::get<0>(once(3)) == Answer::Sat);
}
