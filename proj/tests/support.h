#pragma once

// Random QF_NIA formulas with a reference evaluator that does not use the
// library, plus exhaustive enumeration helpers.

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace nia_test {

struct GenParams {
  int max_ints = 4;
  int max_bools = 3;
  int min_ints = 1;
  int min_bools = 0;
  long lo = -5;
  long hi = 5;
  int max_degree = 3;
  int max_clauses = 6;
  int max_coeff = 5;
  bool cnf_only = false;  // clauses are disjunctions of (negated) atoms and Boolean variables
  bool boxed = false;     // add lo <= x <= hi for every integer variable
};

/// Sum of c * prod x_i^e_i over the integer variables.
struct RefPoly {
  struct Mono {
    long coeff;
    std::vector<unsigned> exps;  // one entry per integer variable
  };
  std::vector<Mono> monos;

  long long eval(const std::vector<long>& ints) const;
  std::string smtlib() const;
};

struct RefNode {
  enum Kind { Atom, BoolVar, Not, And, Or, Ite } kind;
  RefPoly lhs, rhs;  // Atom
  std::string rel;   // "=", "distinct", "<=", "<", ">=", ">"
  int var = 0;       // BoolVar: index among the Booleans
  std::vector<int> kids;
};

struct RefFormula {
  int n_int = 0;
  int n_bool = 0;
  long lo = 0;
  long hi = 0;
  std::vector<RefNode> nodes;
  std::vector<int> asserts;

  /// values: the integers first, then the Booleans as 0/1.
  bool eval(const std::vector<long>& values) const;
  bool eval_node(int n, const std::vector<long>& values) const;
  /// Declarations (x0.., then b0..) and one assert per conjunct.
  std::string smtlib(bool with_check_sat = true) const;
  std::size_t num_vars() const { return static_cast<std::size_t>(n_int + n_bool); }
};

RefFormula random_formula(std::mt19937_64& rng, const GenParams& p);

/// Calls f on every assignment of the integer variables to [lo, hi] and the
/// Booleans to {0, 1}; stops early when f returns false.
void enumerate(int n_int, int n_bool, long lo, long hi, const std::function<bool(const std::vector<long>&)>& f);

/// Number of satisfying assignments, stopping at `limit`.
std::size_t count_models(const RefFormula& f, std::size_t limit = SIZE_MAX);

}  // namespace nia_test
