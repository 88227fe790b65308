#include <doctest.h>

#include <array>
#include <map>
#include <random>

#include "nia/polynomial.h"

using namespace nia;

namespace {

// Dense reference: exponent triple -> coefficient.
using Dense = std::map<std::array<unsigned, 3>, long>;

long dense_eval(const Dense& d, const std::array<long, 3>& x) {
  long s = 0;
  for (const auto& [e, c] : d) {
    long t = c;
    for (int i = 0; i < 3; ++i) {
      for (unsigned k = 0; k < e[i]; ++k) t *= x[i];
    }
    s += t;
  }
  return s;
}

Dense dense_mul(const Dense& a, const Dense& b) {
  Dense r;
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) r[{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}] += ca * cb;
  }
  return r;
}

std::pair<Polynomial, Dense> random_poly(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coeff(-10, 10), nterms(0, 5), deg(0, 4), var(0, 2);
  Polynomial p;
  Dense d;
  int n = nterms(rng);
  for (int i = 0; i < n; ++i) {
    std::array<unsigned, 3> e{};
    Monomial m;
    int dg = deg(rng);
    for (int k = 0; k < dg; ++k) {
      int v = var(rng);
      ++e[v];
      m = m * Monomial::of(static_cast<VarId>(v));
    }
    int c = coeff(rng);
    d[e] += c;
    p = p + Polynomial::monomial(m, Integer(c));
  }
  return {p, d};
}

Integer eval_at(const Polynomial& p, const std::array<long, 3>& x) {
  std::vector<Integer> a{Integer(x[0]), Integer(x[1]), Integer(x[2])};
  return p.evaluate(a);
}

void check_canonical(const Polynomial& p) {
  auto terms = p.terms();
  for (std::size_t i = 0; i < terms.size(); ++i) {
    CHECK(terms[i].coeff != 0);
    if (i > 0) CHECK(grlex_compare(terms[i - 1].mono, terms[i].mono) == std::strong_ordering::greater);
  }
}

}  // namespace

TEST_CASE("arithmetic agrees with dense evaluation on random polynomials") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> pt(-6, 6);
  for (int iter = 0; iter < 1000; ++iter) {
    auto [p, dp] = random_poly(rng);
    auto [q, dq] = random_poly(rng);
    Polynomial sum = p + q, diff = p - q, prod = p * q;
    Dense dprod = dense_mul(dp, dq);
    check_canonical(sum);
    check_canonical(prod);
    for (int k = 0; k < 4; ++k) {
      std::array<long, 3> x{pt(rng), pt(rng), pt(rng)};
      long a = dense_eval(dp, x), b = dense_eval(dq, x);
      REQUIRE(eval_at(p, x) == a);
      REQUIRE(eval_at(sum, x) == a + b);
      REQUIRE(eval_at(diff, x) == a - b);
      REQUIRE(eval_at(prod, x) == dense_eval(dprod, x));
    }
  }
}

TEST_CASE("canonical form") {
  Polynomial x = Polynomial::variable(0), y = Polynomial::variable(1);
  CHECK((x - x).is_zero());
  CHECK((x + y) * (x + y) == x * x + y * y + x * y * Integer(2));
  CHECK((x * y).degree() == 2);
  CHECK((x * x * y).degree_in(0) == 2);
  CHECK(Polynomial(Integer(0)).is_zero());
  CHECK((x * Integer(6) + y * Integer(4)).content() == 2);
  CHECK((x + y).pow(3) == (x + y) * (x + y) * (x + y));
  // x^2 precedes x*y precedes y^2 precedes x.
  Polynomial p = x + y * y + x * y + x * x;
  auto t = p.terms();
  REQUIRE(t.size() == 4);
  CHECK(t[0].mono == Monomial::of(0, 2));
  CHECK(t[1].mono == Monomial::of(0) * Monomial::of(1));
  CHECK(t[2].mono == Monomial::of(1, 2));
  CHECK(t[3].mono == Monomial::of(0));
}

TEST_CASE("substitution and univariate coefficients") {
  Polynomial x = Polynomial::variable(0), y = Polynomial::variable(1);
  Polynomial p = x * y + x * x * Integer(2) - Polynomial(Integer(3));
  Integer two(2);
  Polynomial q = p.substitute([&](VarId v) { return v == 1 ? &two : nullptr; });
  CHECK(q == x * x * Integer(2) + x * Integer(2) - Polynomial(Integer(3)));
  auto c = q.univariate_coefficients(0);
  REQUIRE(c.size() == 3);
  CHECK(c[0] == -3);
  CHECK(c[1] == 2);
  CHECK(c[2] == 2);
  CHECK(p.variables() == std::vector<VarId>{0, 1});
}

TEST_CASE("big coefficients stay exact") {
  Polynomial x = Polynomial::variable(0);
  Polynomial p = x.pow(5);
  std::vector<Integer> a{Integer("1000000000000")};
  CHECK(p.evaluate(a) == Integer("1000000000000000000000000000000000000000000000000000000000000"));
}
