#include "nia/polynomial.h"

#include <algorithm>
#include <cassert>
#include <map>
#include <sstream>

namespace nia {

Monomial Monomial::of(VarId v, unsigned exp) {
  Monomial m;
  if (exp > 0) {
    m.powers_.push_back({v, exp});
    m.degree_ = exp;
  }
  return m;
}

unsigned Monomial::exponent_of(VarId v) const {
  auto it = std::lower_bound(powers_.begin(), powers_.end(), v,
                             [](const VarPower& p, VarId x) { return p.var < x; });
  return (it != powers_.end() && it->var == v) ? it->exp : 0;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r;
  r.powers_.reserve(powers_.size() + other.powers_.size());
  auto a = powers_.begin(), b = other.powers_.begin();
  while (a != powers_.end() || b != other.powers_.end()) {
    if (b == other.powers_.end() || (a != powers_.end() && a->var < b->var)) {
      r.powers_.push_back(*a++);
    } else if (a == powers_.end() || b->var < a->var) {
      r.powers_.push_back(*b++);
    } else {
      r.powers_.push_back({a->var, a->exp + b->exp});
      ++a;
      ++b;
    }
  }
  r.degree_ = degree_ + other.degree_;
  return r;
}

std::size_t Monomial::hash() const {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (const auto& p : powers_) {
    h = (h ^ p.var) * 0x100000001b3ULL;
    h = (h ^ p.exp) * 0x100000001b3ULL;
  }
  return h;
}

std::strong_ordering grlex_compare(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree()) return a.degree() <=> b.degree();
  auto pa = a.powers(), pb = b.powers();
  std::size_t i = 0;
  for (; i < pa.size() && i < pb.size(); ++i) {
    if (pa[i].var != pb[i].var) {
      // The monomial mentioning the smaller variable is larger.
      return pa[i].var < pb[i].var ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    if (pa[i].exp != pb[i].exp) return pa[i].exp <=> pb[i].exp;
  }
  return pa.size() <=> pb.size();
}

namespace {

struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return grlex_compare(a, b) > 0; }
};

}  // namespace

Polynomial::Polynomial(Integer constant) {
  if (constant != 0) terms_.push_back({Monomial{}, std::move(constant)});
}

Polynomial Polynomial::variable(VarId v) { return monomial(Monomial::of(v), Integer(1)); }

Polynomial Polynomial::monomial(Monomial m, Integer c) {
  Polynomial p;
  if (c != 0) p.terms_.push_back({std::move(m), std::move(c)});
  return p;
}

Polynomial Polynomial::from_unsorted(std::vector<Term> terms) {
  std::map<Monomial, Integer, GrlexGreater> acc;
  for (auto& t : terms) {
    auto [it, inserted] = acc.try_emplace(std::move(t.mono), t.coeff);
    if (!inserted) it->second += t.coeff;
  }
  std::vector<Term> out;
  out.reserve(acc.size());
  for (auto& [m, c] : acc) {
    if (c != 0) out.push_back({m, c});
  }
  return Polynomial(std::move(out));
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_constant());
}

Integer Polynomial::constant_term() const {
  if (!terms_.empty() && terms_.back().mono.is_constant()) return terms_.back().coeff;
  return 0;
}

unsigned Polynomial::degree() const { return terms_.empty() ? 0 : terms_.front().mono.degree(); }

unsigned Polynomial::degree_in(VarId v) const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.exponent_of(v));
  return d;
}

std::vector<VarId> Polynomial::variables() const {
  std::vector<VarId> vs;
  for (const auto& t : terms_) {
    for (const auto& p : t.mono.powers()) vs.push_back(p.var);
  }
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

bool Polynomial::contains(VarId v) const {
  return std::any_of(terms_.begin(), terms_.end(), [v](const Term& t) { return t.mono.contains(v); });
}

Polynomial Polynomial::operator-() const {
  auto out = terms_;
  for (auto& t : out) t.coeff = -t.coeff;
  return Polynomial(std::move(out));
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin(), b = o.terms_.begin();
  while (a != terms_.end() && b != o.terms_.end()) {
    auto cmp = grlex_compare(a->mono, b->mono);
    if (cmp > 0) {
      out.push_back(*a++);
    } else if (cmp < 0) {
      out.push_back(*b++);
    } else {
      Integer c = a->coeff + b->coeff;
      if (c != 0) out.push_back({a->mono, std::move(c)});
      ++a;
      ++b;
    }
  }
  out.insert(out.end(), a, terms_.end());
  out.insert(out.end(), b, o.terms_.end());
  return Polynomial(std::move(out));
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<Term> raw;
  raw.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_) {
    for (const auto& b : o.terms_) raw.push_back({a.mono * b.mono, a.coeff * b.coeff});
  }
  return from_unsorted(std::move(raw));
}

Polynomial Polynomial::operator*(const Integer& c) const {
  if (c == 0) return {};
  auto out = terms_;
  for (auto& t : out) t.coeff *= c;
  return Polynomial(std::move(out));
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result(Integer(1));
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

Integer Polynomial::content() const {
  Integer g = 0;
  for (const auto& t : terms_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_mpz_t());
  return g;
}

Polynomial Polynomial::divide_exact(const Integer& d) const {
  auto out = terms_;
  for (auto& t : out) mpz_divexact(t.coeff.get_mpz_t(), t.coeff.get_mpz_t(), d.get_mpz_t());
  return Polynomial(std::move(out));
}

Integer Polynomial::evaluate(const ValueLookup& value) const {
  Integer sum = 0, prod, pw;
  for (const auto& t : terms_) {
    prod = t.coeff;
    for (const auto& p : t.mono.powers()) {
      const Integer* v = value(p.var);
      assert(v != nullptr && "evaluate: unassigned variable");
      mpz_pow_ui(pw.get_mpz_t(), v->get_mpz_t(), p.exp);
      prod *= pw;
    }
    sum += prod;
  }
  return sum;
}

Integer Polynomial::evaluate(std::span<const Integer> assignment) const {
  return evaluate([&](VarId v) { return &assignment[v]; });
}

Polynomial Polynomial::substitute(const ValueLookup& value) const {
  std::vector<Term> raw;
  raw.reserve(terms_.size());
  bool changed = false;
  Integer pw;
  for (const auto& t : terms_) {
    Term nt{Monomial{}, t.coeff};
    for (const auto& p : t.mono.powers()) {
      if (const Integer* v = value(p.var)) {
        mpz_pow_ui(pw.get_mpz_t(), v->get_mpz_t(), p.exp);
        nt.coeff *= pw;
        changed = true;
      } else {
        nt.mono = nt.mono * Monomial::of(p.var, p.exp);
      }
    }
    raw.push_back(std::move(nt));
  }
  if (!changed) return *this;
  return from_unsorted(std::move(raw));
}

std::vector<Integer> Polynomial::univariate_coefficients(VarId v) const {
  std::vector<Integer> c(degree_in(v) + 1, Integer(0));
  for (const auto& t : terms_) {
    assert(t.mono.powers().size() <= 1);
    c[t.mono.exponent_of(v)] += t.coeff;
  }
  return c;
}

std::string Polynomial::to_string(const std::function<std::string(VarId)>& name) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    Integer c = t.coeff;
    if (!first) {
      os << (c < 0 ? " - " : " + ");
      c = abs_value(c);
    } else if (c < 0 && !t.mono.is_constant()) {
      os << "-";
      c = abs_value(c);
    }
    first = false;
    bool need_star = false;
    if (c != 1 || t.mono.is_constant()) {
      os << c.get_str();
      need_star = true;
    }
    for (const auto& p : t.mono.powers()) {
      if (need_star) os << "*";
      os << name(p.var);
      if (p.exp > 1) os << "^" << p.exp;
      need_star = true;
    }
  }
  return os.str();
}

std::size_t Polynomial::hash() const {
  std::size_t h = 0x84222325ULL;
  for (const auto& t : terms_) {
    h = h * 31 + t.mono.hash();
    h = h * 31 + hash_value(t.coeff);
  }
  return h;
}

}  // namespace nia
