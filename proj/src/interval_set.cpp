#include "nia/interval_set.h"

#include <algorithm>
#include <cassert>

namespace nia {

namespace {

// Ordering on lower bounds with -inf first.
bool lo_less(const std::optional<Integer>& a, const std::optional<Integer>& b) {
  if (!a) return b.has_value();
  if (!b) return false;
  return *a < *b;
}

// max on upper bounds with +inf largest.
const std::optional<Integer>& hi_max(const std::optional<Integer>& a, const std::optional<Integer>& b) {
  if (!a) return a;
  if (!b) return b;
  return *a < *b ? b : a;
}

const std::optional<Integer>& hi_min(const std::optional<Integer>& a, const std::optional<Integer>& b) {
  if (!a) return b;
  if (!b) return a;
  return *a < *b ? a : b;
}

const std::optional<Integer>& lo_max(const std::optional<Integer>& a, const std::optional<Integer>& b) {
  if (!a) return b;
  if (!b) return a;
  return *a < *b ? b : a;
}

bool nonempty(const Interval& i) { return !i.lo || !i.hi || *i.lo <= *i.hi; }

}  // namespace

IntervalSet IntervalSet::full() {
  IntervalSet s;
  s.parts_.push_back(Interval{});
  return s;
}

IntervalSet IntervalSet::point(const Integer& v) {
  IntervalSet s;
  s.parts_.push_back(Interval{v, v});
  return s;
}

IntervalSet IntervalSet::range(std::optional<Integer> lo, std::optional<Integer> hi) {
  IntervalSet s;
  Interval i{std::move(lo), std::move(hi)};
  if (nonempty(i)) s.parts_.push_back(std::move(i));
  return s;
}

IntervalSet IntervalSet::from_intervals(std::vector<Interval> parts) {
  std::erase_if(parts, [](const Interval& i) { return !nonempty(i); });
  std::sort(parts.begin(), parts.end(), [](const Interval& a, const Interval& b) { return lo_less(a.lo, b.lo); });
  IntervalSet s;
  for (auto& i : parts) {
    if (!s.parts_.empty()) {
      Interval& last = s.parts_.back();
      // Merge when overlapping or adjacent: i.lo <= last.hi + 1.
      if (!last.hi || !i.lo || *i.lo <= *last.hi + 1) {
        last.hi = hi_max(last.hi, i.hi);
        continue;
      }
    }
    s.parts_.push_back(std::move(i));
  }
  return s;
}

bool IntervalSet::contains(const Integer& v) const {
  // First interval whose upper bound is >= v.
  auto it = std::partition_point(parts_.begin(), parts_.end(), [&](const Interval& i) { return i.hi && *i.hi < v; });
  return it != parts_.end() && it->contains(v);
}

std::optional<Integer> IntervalSet::singleton_value() const {
  if (parts_.size() == 1 && parts_[0].lo && parts_[0].hi && *parts_[0].lo == *parts_[0].hi) return *parts_[0].lo;
  return std::nullopt;
}

IntervalSet IntervalSet::intersect(const IntervalSet& o) const {
  if (o.is_full()) return *this;
  if (is_full()) return o;
  IntervalSet r;
  std::size_t i = 0, j = 0;
  while (i < parts_.size() && j < o.parts_.size()) {
    const Interval& a = parts_[i];
    const Interval& b = o.parts_[j];
    Interval c{lo_max(a.lo, b.lo), hi_min(a.hi, b.hi)};
    if (nonempty(c)) r.parts_.push_back(std::move(c));
    // Advance whichever ends first.
    bool a_first = a.hi && (!b.hi || *a.hi < *b.hi);
    if (a_first) {
      ++i;
    } else {
      ++j;
    }
  }
  return r;
}

IntervalSet IntervalSet::unite(const IntervalSet& o) const {
  std::vector<Interval> all(parts_.begin(), parts_.end());
  all.insert(all.end(), o.parts_.begin(), o.parts_.end());
  return from_intervals(std::move(all));
}

IntervalSet IntervalSet::complement() const {
  IntervalSet r;
  std::optional<Integer> next_lo;  // -inf
  bool open_from_start = true;
  for (const auto& i : parts_) {
    if (i.lo) {
      Interval gap{open_from_start ? std::nullopt : next_lo, Integer(*i.lo - 1)};
      if (nonempty(gap)) r.parts_.push_back(std::move(gap));
    }
    if (!i.hi) return r;
    next_lo = *i.hi + 1;
    open_from_start = false;
  }
  r.parts_.push_back(Interval{open_from_start ? std::nullopt : next_lo, std::nullopt});
  return r;
}

std::string IntervalSet::to_string() const {
  if (parts_.empty()) return "{}";
  std::string s;
  for (std::size_t k = 0; k < parts_.size(); ++k) {
    if (k > 0) s += " u ";
    const auto& i = parts_[k];
    s += i.lo ? "[" + i.lo->get_str() : "(-inf";
    s += ", ";
    s += i.hi ? i.hi->get_str() + "]" : "+inf)";
  }
  return s;
}

Integer pick_value(const Interval& i) {
  if (i.lo && *i.lo > 0) return *i.lo;
  if (i.hi && *i.hi < 0) return *i.hi;
  return 0;
}

Integer pick_value(const IntervalSet& s, const std::optional<Integer>& hint) {
  assert(!s.is_empty() && "pick_value on empty set");
  if (hint && s.contains(*hint)) return *hint;
  std::optional<Integer> best;
  for (const auto& i : s.intervals()) {
    Integer v = pick_value(i);
    if (!best) {
      best = v;
      continue;
    }
    int c = cmp(abs_value(v), abs_value(*best));
    if (c < 0 || (c == 0 && v > *best)) best = v;
  }
  return *best;
}

Neighborhood containing_and_neighbors(const IntervalSet& s, const Integer& v) {
  auto parts = s.intervals();
  auto it = std::partition_point(parts.begin(), parts.end(), [&](const Interval& i) { return i.hi && *i.hi < v; });
  auto idx = static_cast<std::size_t>(it - parts.begin());
  Neighborhood n;
  if (idx > 0) n.left = idx - 1;
  if (it != parts.end() && it->contains(v)) {
    n.containing = idx;
    if (idx + 1 < parts.size()) n.right = idx + 1;
  } else if (idx < parts.size()) {
    n.right = idx;
  }
  return n;
}

}  // namespace nia
