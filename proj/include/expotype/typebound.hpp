#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "expotype/config.hpp"
#include "expotype/measure.hpp"
#include "expotype/partition.hpp"
#include "expotype/series.hpp"
#include "expotype/uniform.hpp"

namespace expotype {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

struct TypeEstimate {
  double lower_bound = 0.0;  // 2*pi*d when everything passes, else 0
  UniformityCertificate certificate;
  SeriesDiagnostics star_mass_diag;
  Interval window;
  std::vector<std::string> caveats;
};

// Terms log mu(star_i) / (1 + n^2), where the two-sided index n counts
// outward from the point nearest the origin. A massless star contributes
// -inf and forces a divergent verdict.
SeriesDiagnostics star_mass_series(const Measure& m, const SequenceSet& lambda,
                                   const Tolerances& tol = Tolerances{});

TypeEstimate type_lower_bound(const Measure& m, const SequenceSet& lambda,
                              const Partition& p, double d, const Tolerances& tol);

struct SearchParams {
  double partition_exponent = kDefaultPartitionExponent;
  std::uint64_t seed = 0;
  Tolerances tol;
};

// Deterministic candidate sequence for a target density: sites are atom
// positions or cell centers of the density pieces, picked per partition
// interval with a mass-then-spacing greedy rule under a running count quota.
SequenceSet select_candidate(const Measure& m, double d, const SearchParams& params);

// Runs type_lower_bound over the density grid on the candidates above and
// keeps the largest passing level. Bound 0 when nothing passes.
TypeEstimate search_max_uniform(const Measure& m, const std::vector<double>& d_grid,
                                const SearchParams& params);

struct StarDoublingReport {
  std::int64_t n = 0;  // outward star index
  double star_mass = 0.0;
  std::size_t parts = 0;
  std::size_t qualifying = 0;
  double part_length = 0.0;
  double separation = 0.0;  // gap between the two chosen part centers
  bool ok = false;
  std::string flag;
};

struct DoublingTransform {
  SequenceSet gamma;
  TypeEstimate est2;
  std::vector<StarDoublingReport> stars;
  SeriesDiagnostics separation_diag;  // sum of log separation_n / (1 + n^2)
  bool ok = false;
};

// Doubles a certified density under a mass-scaling hypothesis
// mu(I) <= C |I|^alpha: rescale mu by 1/C, cut each star of the certified
// sequence into equal parts sized by (mass/6)^(1/alpha), keep two
// well-separated mass-bearing parts, and re-certify their centers at 2d.
// Stars that cannot produce three qualifying parts are flagged and the
// doubled estimate is withheld.
DoublingTransform frostman_doubling_transform(const Measure& m, const TypeEstimate& est,
                                              double alpha, double C,
                                              const SearchParams& params = SearchParams{});

struct SplitResult {
  Measure m1;
  TypeEstimate est1;
  Measure m2;
  TypeEstimate est2;
  SequenceSet gamma;  // carriers of m1 (their stars form the cut set)
  SequenceSet psi;    // centers used to certify m2
};

// Splits a certified measure into two parts with densities c1 + c2 = d by
// restricting to the stars of an evenly spread subsequence.
SplitResult split_measure(const Measure& m, const TypeEstimate& est, double c1,
                          double c2, const Tolerances& tol = Tolerances{});

// Integral of log(1 + M(x)) / (1 + x^2) over [0, R], where M(x) is the
// essential sup of the density on [-x, x]. Exact per step of M; reported as
// increments over geometrically nested windows.
SeriesDiagnostics growth_log_integral(const Measure& m,
                                      const Tolerances& tol = Tolerances{});

// Piecewise-constant sampled weight, >= 1 everywhere; value at x is the
// sample at the largest sample point <= x (1 before the first sample).
struct WeightFn {
  std::vector<std::pair<double, double>> samples;  // (x, W(x)), x increasing

  void validate() const;
  double at(double x) const;
};

struct WeightReport {
  SeriesDiagnostics mu_weight;   // truncated integral of W against mu
  SeriesDiagnostics log_series;  // sum of log W(point) / (1 + point^2)
};

WeightReport weight_diagnostics(const Measure& m, const WeightFn& w,
                                const SequenceSet& lambda,
                                const Tolerances& tol = Tolerances{});

// Worst-case admissible weight for a sequence: on each star take
// max(W(point), 1/mu(star)) / (1 + n^2), clamped below by 1; 1 off the stars.
WeightFn adversarial_weight(const Measure& m, const WeightFn& base,
                            const SequenceSet& lambda);

}  // namespace expotype
