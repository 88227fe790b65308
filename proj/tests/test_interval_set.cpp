#include <doctest.h>

#include <random>

#include "nia/interval_set.h"

using namespace nia;

namespace {

constexpr long kWindow = 30;

IntervalSet random_set(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> pt(-20, 20);
  std::uniform_int_distribution<int> n(0, 4), unbounded(0, 5);
  std::vector<Interval> parts;
  for (int i = n(rng); i > 0; --i) {
    long a = pt(rng), b = pt(rng);
    if (a > b) std::swap(a, b);
    Interval iv{Integer(a), Integer(b)};
    if (unbounded(rng) == 0) iv.lo.reset();
    if (unbounded(rng) == 0) iv.hi.reset();
    parts.push_back(iv);
  }
  return IntervalSet::from_intervals(parts);
}

// Membership of every integer in the test window.
std::vector<bool> members(const IntervalSet& s) {
  std::vector<bool> m;
  for (long v = -kWindow; v <= kWindow; ++v) m.push_back(s.contains(Integer(v)));
  return m;
}

bool canonical(const IntervalSet& s) {
  auto iv = s.intervals();
  for (std::size_t i = 0; i < iv.size(); ++i) {
    if (iv[i].lo && iv[i].hi && *iv[i].lo > *iv[i].hi) return false;
    if (i + 1 < iv.size()) {
      if (!iv[i].hi || !iv[i + 1].lo) return false;
      if (*iv[i].hi + 1 >= *iv[i + 1].lo) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("Boolean algebra laws hold pointwise") {
  std::mt19937_64 rng(3);
  for (int iter = 0; iter < 2000; ++iter) {
    IntervalSet a = random_set(rng), b = random_set(rng), c = random_set(rng);
    auto ma = members(a), mb = members(b);
    IntervalSet i = a.intersect(b), u = a.unite(b), n = a.complement();
    REQUIRE(canonical(i));
    REQUIRE(canonical(u));
    REQUIRE(canonical(n));
    auto mi = members(i), mu = members(u), mn = members(n);
    for (std::size_t k = 0; k < ma.size(); ++k) {
      REQUIRE(mi[k] == (ma[k] && mb[k]));
      REQUIRE(mu[k] == (ma[k] || mb[k]));
      REQUIRE(mn[k] == !ma[k]);
    }
    CHECK(n.complement() == a);
    CHECK(a.unite(b).complement() == n.intersect(b.complement()));
    CHECK(a.intersect(b.unite(c)) == i.unite(a.intersect(c)));
    CHECK(a.intersect(n).is_empty());
    CHECK(a.unite(n).is_full());
  }
}

TEST_CASE("adjacent intervals merge") {
  auto s = IntervalSet::from_intervals({{Integer(1), Integer(3)}, {Integer(4), Integer(6)}, {Integer(8), Integer(8)}});
  REQUIRE(s.size() == 2);
  CHECK(s.intervals()[0] == Interval{Integer(1), Integer(6)});
  CHECK(IntervalSet::point(Integer(5)).singleton_value() == Integer(5));
  CHECK_FALSE(s.singleton_value().has_value());
  CHECK(IntervalSet::full().complement().is_empty());
}

TEST_CASE("pick_value prefers the hint, then the smallest magnitude") {
  auto two_sided = IntervalSet::at_most(Integer(-2)).unite(IntervalSet::at_least(Integer(2)));
  CHECK(pick_value(two_sided) == 2);
  CHECK(pick_value(two_sided, Integer(-7)) == -7);
  CHECK(pick_value(two_sided, Integer(0)) == 2);
  CHECK(pick_value(IntervalSet::at_most(Integer(-4))) == -4);
  CHECK(pick_value(IntervalSet::range(Integer(-3), Integer(3))) == 0);
  CHECK(pick_value(Interval{std::nullopt, Integer(-2)}) == -2);
  CHECK(pick_value(IntervalSet::point(Integer(-9))) == -9);
}

TEST_CASE("neighborhood of a value") {
  auto s = IntervalSet::from_intervals({{std::nullopt, Integer(-2)}, {Integer(2), Integer(5)}, {Integer(9), std::nullopt}});
  auto in = containing_and_neighbors(s, Integer(3));
  CHECK(in.containing == std::optional<std::size_t>(1));
  CHECK(in.left == std::optional<std::size_t>(0));
  CHECK(in.right == std::optional<std::size_t>(2));
  auto gap = containing_and_neighbors(s, Integer(7));
  CHECK_FALSE(gap.containing.has_value());
  CHECK(gap.left == std::optional<std::size_t>(1));
  CHECK(gap.right == std::optional<std::size_t>(2));
  auto edge = containing_and_neighbors(s, Integer(-10));
  CHECK(edge.containing == std::optional<std::size_t>(0));
  CHECK_FALSE(edge.left.has_value());
}
