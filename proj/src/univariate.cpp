#include "nia/univariate.h"

#include <algorithm>
#include <cassert>
#include <set>

namespace nia {

namespace {

using QPoly = std::vector<Rational>;  // low-to-high, no trailing zeros

void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

std::vector<Integer> trimmed(std::span<const Integer> c) {
  std::vector<Integer> out(c.begin(), c.end());
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

QPoly to_q(std::span<const Integer> c) {
  QPoly p;
  p.reserve(c.size());
  for (const auto& x : c) p.emplace_back(x);
  trim(p);
  return p;
}

QPoly derivative(const QPoly& p) {
  QPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<unsigned long>(i));
  trim(d);
  return d;
}

// Quotient and remainder of a / b over Q.
std::pair<QPoly, QPoly> divmod(QPoly a, const QPoly& b) {
  assert(!b.empty());
  if (a.size() < b.size()) return {QPoly{}, a};
  QPoly q(a.size() - b.size() + 1);
  const Rational& lead = b.back();
  while (!a.empty() && a.size() >= b.size()) {
    std::size_t shift = a.size() - b.size();
    Rational f = a.back() / lead;
    q[shift] = f;
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
    a.pop_back();
    trim(a);
  }
  trim(q);
  return {q, a};
}

QPoly gcd(QPoly a, QPoly b) {
  while (!b.empty()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

int sign_at(const QPoly& p, const Integer& x) {
  Rational acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return sgn(acc);
}

Integer eval_at(const std::vector<Integer>& c, const Integer& x) {
  Integer acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

class SturmSequence {
 public:
  explicit SturmSequence(const std::vector<Integer>& coeffs) {
    QPoly p = to_q(coeffs);
    QPoly g = gcd(p, derivative(p));
    QPoly sqfree = divmod(p, g).first;
    seq_.push_back(sqfree);
    seq_.push_back(derivative(sqfree));
    trim(seq_.back());
    while (!seq_.back().empty()) {
      QPoly r = divmod(seq_[seq_.size() - 2], seq_.back()).second;
      for (auto& c : r) c = -c;
      if (r.empty()) break;
      seq_.push_back(std::move(r));
    }
    if (seq_.back().empty()) seq_.pop_back();
  }

  std::size_t variations(const Integer& x) const {
    std::size_t changes = 0;
    int last = 0;
    for (const auto& s : seq_) {
      int sg = sign_at(s, x);
      if (sg == 0) continue;
      if (last != 0 && sg != last) ++changes;
      last = sg;
    }
    return changes;
  }

 private:
  std::vector<QPoly> seq_;
};

void isolate(const SturmSequence& sturm, const Integer& lo, std::size_t v_lo, const Integer& hi, std::size_t v_hi,
             std::set<Integer>& critical) {
  if (v_lo <= v_hi) return;
  if (hi - lo == 1) {
    critical.insert(lo);
    critical.insert(hi);
    return;
  }
  Integer mid = floor_div(lo + hi, 2);
  std::size_t v_mid = sturm.variations(mid);
  isolate(sturm, lo, v_lo, mid, v_mid, critical);
  isolate(sturm, mid, v_mid, hi, v_hi, critical);
}

IntervalSet solve_linear(const Integer& b, const Integer& a, Relation rel) {
  // a*x + b rel 0 with a != 0.
  Rational root(-b, a);
  root.canonicalize();
  switch (rel) {
    case Relation::EQ:
    case Relation::NEQ: {
      IntervalSet eq = root.get_den() == 1 ? IntervalSet::point(root.get_num()) : IntervalSet{};
      return rel == Relation::EQ ? eq : eq.complement();
    }
    case Relation::LEQ:
      return a > 0 ? IntervalSet::at_most(floor_of(root)) : IntervalSet::at_least(ceil_of(root));
    case Relation::LT:
      // a*x + b < 0 iff a*x + b + 1 <= 0 over the integers.
      return solve_linear(b + 1, a, Relation::LEQ);
  }
  return {};
}

}  // namespace

Integer cauchy_bound(std::span<const Integer> coeffs) {
  auto c = trimmed(coeffs);
  assert(!c.empty());
  Integer lead = abs_value(c.back());
  Integer best = 0;
  for (std::size_t i = 0; i + 1 < c.size(); ++i) {
    Integer q;
    Integer a = abs_value(c[i]);
    mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), lead.get_mpz_t());
    if (q > best) best = q;
  }
  return best + 1;
}

std::size_t count_real_roots(std::span<const Integer> coeffs, const Integer& a, const Integer& b) {
  auto c = trimmed(coeffs);
  if (c.size() <= 1) return 0;
  SturmSequence s(c);
  std::size_t va = s.variations(a), vb = s.variations(b);
  return va > vb ? va - vb : 0;
}

IntervalSet solve_univariate(std::span<const Integer> coeffs, Relation rel) {
  auto c = trimmed(coeffs);
  if (c.size() <= 1) {
    Integer k = c.empty() ? Integer(0) : c[0];
    return relation_holds(rel, k) ? IntervalSet::full() : IntervalSet{};
  }
  if (c.size() == 2) return solve_linear(c[0], c[1], rel);

  SturmSequence sturm(c);
  Integer bound = cauchy_bound(c);
  Integer lo = -bound - 1, hi = bound;
  std::set<Integer> critical;
  isolate(sturm, lo, sturm.variations(lo), hi, sturm.variations(hi), critical);

  std::vector<Interval> parts;
  auto holds = [&](const Integer& x) { return relation_holds(rel, eval_at(c, x)); };
  if (critical.empty()) {
    // No real roots: the sign is constant everywhere.
    return holds(Integer(0)) ? IntervalSet::full() : IntervalSet{};
  }
  const Integer& first = *critical.begin();
  if (holds(first - 1)) parts.push_back(Interval{std::nullopt, Integer(first - 1)});
  for (auto it = critical.begin(); it != critical.end(); ++it) {
    if (holds(*it)) parts.push_back(Interval{*it, *it});
    auto next = std::next(it);
    Integer gap_lo = *it + 1;
    if (next == critical.end()) {
      if (holds(gap_lo)) parts.push_back(Interval{gap_lo, std::nullopt});
    } else if (*next - *it >= 2 && holds(gap_lo)) {
      parts.push_back(Interval{gap_lo, Integer(*next - 1)});
    }
  }
  return IntervalSet::from_intervals(std::move(parts));
}

IntervalSet solve_univariate(const Polynomial& p, VarId v, Relation rel) {
  auto coeffs = p.univariate_coefficients(v);
  return solve_univariate(coeffs, rel);
}

}  // namespace nia
