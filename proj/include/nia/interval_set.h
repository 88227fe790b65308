#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nia/integer.h"

namespace nia {

/// Integer interval [lo, hi]; a missing bound is infinite.
struct Interval {
  std::optional<Integer> lo;
  std::optional<Integer> hi;

  bool contains(const Integer& v) const { return (!lo || *lo <= v) && (!hi || v <= *hi); }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Finite union of integer intervals in canonical form: sorted, disjoint, and
/// separated by at least one missing integer.
class IntervalSet {
 public:
  IntervalSet() = default;  // empty
  static IntervalSet full();
  static IntervalSet point(const Integer& v);
  static IntervalSet range(std::optional<Integer> lo, std::optional<Integer> hi);
  static IntervalSet at_most(const Integer& hi) { return range(std::nullopt, hi); }
  static IntervalSet at_least(const Integer& lo) { return range(lo, std::nullopt); }
  /// Canonicalizes an arbitrary list of intervals (empty ones are dropped).
  static IntervalSet from_intervals(std::vector<Interval> parts);

  bool is_empty() const { return parts_.empty(); }
  bool is_full() const { return parts_.size() == 1 && !parts_[0].lo && !parts_[0].hi; }
  bool contains(const Integer& v) const;
  std::optional<Integer> singleton_value() const;
  std::span<const Interval> intervals() const { return parts_; }
  std::size_t size() const { return parts_.size(); }

  IntervalSet intersect(const IntervalSet& o) const;
  IntervalSet unite(const IntervalSet& o) const;
  IntervalSet complement() const;

  std::string to_string() const;
  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

 private:
  std::vector<Interval> parts_;
};

/// Member of the interval closest to zero, preferring the nonnegative side.
Integer pick_value(const Interval& i);
/// `hint` when it is a member, otherwise the member of minimum absolute value
/// (ties go to the nonnegative candidate). `s` must be nonempty.
Integer pick_value(const IntervalSet& s, const std::optional<Integer>& hint = std::nullopt);

/// Position of a value relative to the intervals of a set. When the value lies
/// in a gap `containing` is empty and left/right are the nearest intervals.
struct Neighborhood {
  std::optional<std::size_t> containing;
  std::optional<std::size_t> left;
  std::optional<std::size_t> right;
};

Neighborhood containing_and_neighbors(const IntervalSet& s, const Integer& v);

}  // namespace nia
