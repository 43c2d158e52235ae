#pragma once

#include <cstdint>
#include <vector>

#include "expotype/config.hpp"
#include "expotype/interval.hpp"
#include "expotype/series.hpp"

namespace expotype {

// Two-sided interval partition of a span around the origin.
//
// Breakpoints are strictly increasing and always include 0. With z the
// position of 0, the intervals are indexed by n in [n_min, n_max]:
//
//   n = 0       [0, b_{z+1}]                 (closed; owns the origin)
//   n >= 1      (b_{z+n}, b_{z+n+1}]         (half-open away from 0)
//   n <= -1     [b_{z+n}, b_{z+n+1})         (mirrored)
//
// so every real in [front, back] lands in exactly one interval.
struct Partition {
  std::vector<double> breakpoints;

  void validate() const;
  std::size_t size() const;  // number of intervals
  std::int64_t n_min() const;
  std::int64_t n_max() const;
  Interval interval(std::int64_t n) const;
  double origin_distance(std::int64_t n) const;  // dist(0, I_n)
  std::int64_t index_of(double x) const;         // throws when x is uncovered
  bool covers(double x) const;
};

// Sum of |I_n|^2 / (1 + dist(0, I_n)^2) in outward interval order.
SeriesDiagnostics shortness_series(const Partition& p, const Tolerances& tol);

// Breakpoints at signed k^exponent, one arm per side of the origin, each arm
// clamped so its final breakpoint is exactly the span end.
Partition power_partition(const Interval& span, double exponent);
Partition power_partition(double R, double exponent);  // symmetric span [-R, R]

// Breakpoints at signed powers of two: 0, ±1, ±2, ±4, ... clamped to R.
Partition dyadic_partition(double R);

// Power partition over the span of `points` whose interior breakpoints are
// moved to the nearest gap midpoint, so no point sits on an interior
// breakpoint. Points must be strictly increasing.
Partition adapted_partition(const std::vector<double>& points, double exponent);

}  // namespace expotype
