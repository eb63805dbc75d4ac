#pragma once

#include <algorithm>
#include <iosfwd>

namespace symest {

/// Real interval with independently open or closed endpoints.
///
/// The empty interval has a single canonical representation, `Interval{}`:
/// (0, 0) open on both sides, length zero.
struct Interval {
  double lower = 0.0;
  double upper = 0.0;
  bool closed_lower = false;
  bool closed_upper = false;

  static constexpr Interval open(double lo, double hi) { return canonical({lo, hi, false, false}); }
  static constexpr Interval closed(double lo, double hi) { return canonical({lo, hi, true, true}); }
  static constexpr Interval closed_open(double lo, double hi) { return canonical({lo, hi, true, false}); }
  static constexpr Interval empty() { return {}; }

  constexpr bool is_empty() const {
    if (lower < upper) return false;
    return !(lower == upper && closed_lower && closed_upper);
  }

  constexpr double length() const { return is_empty() ? 0.0 : upper - lower; }

  constexpr bool contains(double x) const {
    if (is_empty()) return false;
    const bool above = closed_lower ? x >= lower : x > lower;
    const bool below = closed_upper ? x <= upper : x < upper;
    return above && below;
  }

  constexpr double midpoint() const { return lower + 0.5 * (upper - lower); }

  /// Collapse any empty description (including NaN endpoints) to `Interval{}`.
  static constexpr Interval canonical(Interval i) {
    if (!(i.lower <= i.upper)) return {};
    if (i.lower == i.upper && !(i.closed_lower && i.closed_upper)) return {};
    return i;
  }

  friend constexpr bool operator==(const Interval&, const Interval&) = default;
};

constexpr Interval intersect(const Interval& a, const Interval& b) {
  if (a.is_empty() || b.is_empty()) return {};
  Interval out;
  if (a.lower > b.lower) {
    out.lower = a.lower;
    out.closed_lower = a.closed_lower;
  } else if (b.lower > a.lower) {
    out.lower = b.lower;
    out.closed_lower = b.closed_lower;
  } else {
    out.lower = a.lower;
    out.closed_lower = a.closed_lower && b.closed_lower;
  }
  if (a.upper < b.upper) {
    out.upper = a.upper;
    out.closed_upper = a.closed_upper;
  } else if (b.upper < a.upper) {
    out.upper = b.upper;
    out.closed_upper = b.closed_upper;
  } else {
    out.upper = a.upper;
    out.closed_upper = a.closed_upper && b.closed_upper;
  }
  return Interval::canonical(out);
}

constexpr double length(const Interval& a) { return a.length(); }

std::ostream& operator<<(std::ostream& os, const Interval& i);

}  // namespace symest
