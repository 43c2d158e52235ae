#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "expotype/config.hpp"

namespace expotype {

enum class Verdict { convergent, divergent, inconclusive };

const char* to_string(Verdict v);

// Truncated-series report.  `terms` are listed in accumulation order; for
// two-sided families that order runs outward from the origin (index 0, -1,
// 1, -2, 2, ...) so partial sums are the symmetric truncations.
//
// partial_sums[k] == sum of terms[0..k], accumulated left to right in this
// exact order; reruns on identical input reproduce the same bits.
//
// Verdict rule: |tail_slope| < tau_conv  => convergent,
//               |tail_slope| > tau_div   => divergent,
//               otherwise inconclusive.
// The absolute value makes the rule cover series drifting to -infinity
// (log-mass sums) as well as to +infinity.  A non-finite term forces
// `divergent` and sets `flag`.
struct SeriesDiagnostics {
  std::vector<std::int64_t> index;
  std::vector<double> terms;
  std::vector<double> partial_sums;
  double tail_slope = 0.0;
  Verdict verdict = Verdict::inconclusive;
  std::string flag;
};

// Builds partial sums, fits the tail slope and applies the verdict rule.
SeriesDiagnostics finalize_series(std::vector<std::int64_t> index,
                                  std::vector<double> terms,
                                  const Tolerances& tol);

// Canonical outward accumulation order for a two-sided index range
// [n_lo, n_hi] containing 0 or -1: yields 0, -1, 1, -2, 2, ...
// clipped to the range.
std::vector<std::int64_t> outward_index_order(std::int64_t n_lo, std::int64_t n_hi);

// Least-squares slope of y against x; returns 0 for fewer than 2 points.
double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace expotype
