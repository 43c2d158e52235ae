#pragma once

#include <vector>

#include "expotype/interval.hpp"
#include "expotype/uniform.hpp"

namespace expotype {

// Continuous piecewise-linear bump: rises by one across each ramp, drifts
// down at rate `slope_offset` across the support, returns to zero at the
// right end. Held as its piecewise-constant derivative.
struct ProfileSegment {
  Interval span;
  double slope = 0.0;
};

struct PiecewiseLinearProfile {
  Interval support;
  std::vector<Interval> ramps;
  double slope_offset = 0.0;
  std::vector<ProfileSegment> segments;
};

// Errors on overlapping ramps, ramps escaping the support, or a rise that
// does not balance slope_offset * |support|.
PiecewiseLinearProfile build_profile(const Interval& support,
                                     const std::vector<Interval>& ramps,
                                     double slope_offset);

// Exact integral of log|t - x| over a x b (closed form, finite even when the
// rectangles touch or coincide).
double log_rectangle_integral(const Interval& a, const Interval& b);

// -(1/pi) * double integral of log|t-x| phi'(t) phi'(x), summed over segment
// rectangles in row-major order.
double dirichlet_norm(const PiecewiseLinearProfile& phi);

struct ClaimCheck {
  double lhs = 0.0;           // dirichlet_norm of the profile
  double rhs = 0.0;           // energy + ramp-length prediction
  double residual_over_s2 = 0.0;
};

// Compares the profile norm against
//   (1/pi)(c^2 |S|^2 log|S| - E(points in S)) - sum log|ramp|
// and reports the gap relative to |S|^2. Ramps must be centered at the
// points.
ClaimCheck claim_residual(const SequenceSet& lambda_in_s,
                          const std::vector<Interval>& ramps, double slope_offset,
                          const Interval& support);

}  // namespace expotype
