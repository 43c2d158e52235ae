#pragma once

#include <algorithm>
#include <stdexcept>

namespace expotype {

// Interval on the real line with explicit endpoint closure.  Closure only
// matters when atoms sit exactly on an endpoint; lengths and overlaps are
// closure-blind.
struct Interval {
  double left = 0.0;
  double right = 0.0;
  bool closed_left = true;
  bool closed_right = true;

  double length() const { return right - left; }

  bool contains(double x) const {
    if (x < left || x > right) return false;
    if (x == left && !closed_left) return false;
    if (x == right && !closed_right) return false;
    return true;
  }

  void validate(const char* who) const {
    if (!(left <= right))
      throw std::invalid_argument(std::string(who) + ": interval has left > right");
  }
};

inline Interval closed(double a, double b) { return Interval{a, b, true, true}; }
inline Interval half_open(double a, double b) { return Interval{a, b, false, true}; }  // (a, b]
inline Interval right_open(double a, double b) { return Interval{a, b, true, false}; } // [a, b)
inline Interval open(double a, double b) { return Interval{a, b, false, false}; }

inline double overlap_length(const Interval& a, const Interval& b) {
  double lo = std::max(a.left, b.left);
  double hi = std::min(a.right, b.right);
  return hi > lo ? hi - lo : 0.0;
}

inline Interval hull(const Interval& a, const Interval& b) {
  Interval h = a;
  if (b.left < h.left) { h.left = b.left; h.closed_left = b.closed_left; }
  if (b.right > h.right) { h.right = b.right; h.closed_right = b.closed_right; }
  return h;
}

}  // namespace expotype
