#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "nia/integer.h"

namespace nia {

using VarId = std::uint32_t;

struct VarPower {
  VarId var;
  unsigned exp;
  friend bool operator==(const VarPower&, const VarPower&) = default;
};

/// Power product x1^e1 * ... * xk^ek, stored sorted by variable id with
/// positive exponents. The empty product is the constant monomial 1.
class Monomial {
 public:
  Monomial() = default;
  static Monomial of(VarId v, unsigned exp = 1);

  unsigned degree() const { return degree_; }
  bool is_constant() const { return powers_.empty(); }
  std::span<const VarPower> powers() const { return powers_; }
  unsigned exponent_of(VarId v) const;
  bool contains(VarId v) const { return exponent_of(v) != 0; }

  Monomial operator*(const Monomial& other) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;

  std::size_t hash() const;

 private:
  std::vector<VarPower> powers_;
  unsigned degree_ = 0;
};

/// Graded lexicographic order: total degree first, then the exponent of the
/// smallest variable id decides.
std::strong_ordering grlex_compare(const Monomial& a, const Monomial& b);

struct Term {
  Monomial mono;
  Integer coeff;
  friend bool operator==(const Term&, const Term&) = default;
};

/// Multivariate polynomial over the integers in canonical form: terms sorted
/// by decreasing grlex order, no zero coefficients, each monomial once.
class Polynomial {
 public:
  using ValueLookup = std::function<const Integer*(VarId)>;

  Polynomial() = default;
  explicit Polynomial(Integer constant);
  static Polynomial variable(VarId v);
  static Polynomial monomial(Monomial m, Integer c);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant term (zero when absent).
  Integer constant_term() const;
  std::span<const Term> terms() const { return terms_; }
  const Term& leading_term() const { return terms_.front(); }
  unsigned degree() const;
  unsigned degree_in(VarId v) const;
  /// Sorted, duplicate-free.
  std::vector<VarId> variables() const;
  bool contains(VarId v) const;

  Polynomial operator-() const;
  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(const Integer& c) const;
  Polynomial pow(unsigned e) const;

  /// Nonnegative gcd of all coefficients; zero for the zero polynomial.
  Integer content() const;
  /// Divides every coefficient by d (which must divide all of them).
  Polynomial divide_exact(const Integer& d) const;

  /// Every variable must be assigned by `value`.
  Integer evaluate(const ValueLookup& value) const;
  Integer evaluate(std::span<const Integer> assignment) const;
  /// Replaces each variable that `value` resolves by its value.
  Polynomial substitute(const ValueLookup& value) const;

  /// Coefficients c0..cd of a polynomial in at most the single variable v.
  std::vector<Integer> univariate_coefficients(VarId v) const;

  std::string to_string(const std::function<std::string(VarId)>& name) const;
  std::size_t hash() const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  explicit Polynomial(std::vector<Term> sorted) : terms_(std::move(sorted)) {}
  static Polynomial from_unsorted(std::vector<Term> terms);

  std::vector<Term> terms_;
};

}  // namespace nia
