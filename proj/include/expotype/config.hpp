#pragma once

#include <cstddef>

namespace expotype {

// Thresholds shared by every series-style verdict in the toolkit.
//
// tail_slope is the least-squares slope of partial sums against log(index)
// over the last third of the accumulation order.  A truncated convergent
// series flattens (|slope| small); a log-divergent one keeps a constant
// positive drift.  The band between tau_conv and tau_div reads as
// "inconclusive at this truncation".
struct Tolerances {
  double tau_conv = 0.05;     // |tail_slope| below this => convergent
  double tau_div = 0.5;       // |tail_slope| above this => divergent
  double density_tol = 0.05;  // allowed |aggregate density - d| on the outer third
};

// Knobs for the finite-dimensional exponential-family scan.
struct GramConfig {
  double kappa = 4.0;            // frequencies per unit bandwidth per node
  double slope_threshold = 0.02; // |decay per doubling| below this => stable
  double floor_rel = 1e-12;      // sigma_min below floor_rel*sigma_scale is noise
  bool nested_freqs = false;     // fixed frequency spacing, grids nest across a
};

// Default exponent for partitions the tool picks itself.  Slowly growing
// intervals keep truncated energy tails readable at desk-scale windows.
inline constexpr double kDefaultPartitionExponent = 1.1;

// Nested sub-window count for truncated integral profiles.
inline constexpr std::size_t kProfileWindows = 24;

inline constexpr const char* kThreadsEnvVar = "EXPOTYPE_THREADS";

}  // namespace expotype
