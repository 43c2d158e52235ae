#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "expotype/config.hpp"
#include "expotype/interval.hpp"
#include "expotype/partition.hpp"
#include "expotype/series.hpp"

namespace expotype {

struct SequenceSet {
  std::vector<double> points;  // strictly increasing

  void validate() const;
};

// Sum over ordered pairs (k != l) of log|x_k - x_l|, accumulated row by row
// in index order so reruns agree bitwise. Each unordered pair counts twice.
double pair_energy(const std::vector<double>& points);
double pair_energy(const SequenceSet& lambda);

// Points per partition interval, left to right (index n_min .. n_max).
std::vector<std::size_t> interval_counts(const SequenceSet& lambda, const Partition& p);

enum class StarBoundary { one_sided, drop_edges };

struct Star {
  double center = 0.0;
  Interval interval;  // closed, centered, length = gap to the rest / 3
};

struct StarSystem {
  std::vector<Star> stars;
};

StarSystem star_intervals(const SequenceSet& lambda, StarBoundary boundary);

enum class CertVerdict { pass, fail, inconclusive };
const char* to_string(CertVerdict v);

struct DensityRow {
  std::int64_t n = 0;
  std::size_t count = 0;
  double length = 0.0;
  double deviation = 0.0;  // count/length - d
};

struct UniformityCertificate {
  SequenceSet lambda;
  Partition partition;
  double d = 0.0;
  Tolerances tolerances;
  std::vector<std::size_t> counts;            // per interval, left to right
  std::vector<double> interval_energies;      // zero when a count is <= 1
  std::vector<DensityRow> density_report;
  double density_gap = 0.0;  // worst per-side outer-third aggregate deviation,
                             // clipped outermost cells excluded
  bool density_ok = false;
  bool long_interval_terms_nonnegative = true;
  SeriesDiagnostics energy_diag;
  SeriesDiagnostics shortness_diag;
  CertVerdict verdict = CertVerdict::inconclusive;
  Interval window;
  std::string flag;
};

// Checks the three conditions behind a d-uniform claim on this partition:
// the partition is short, interval counts track d times interval length, and
// the energy series (count_n^2 log|I_n| - E_n)/(1 + dist(0, I_n)^2) stays
// summable. Verdict is pass only when all three diagnostics agree.
UniformityCertificate certify_uniform(const SequenceSet& lambda, const Partition& p,
                                      double d, const Tolerances& tol);

struct DensityEstimate {
  double value = 0.0;
  bool defined = false;
};

// Count-per-length estimate on a default power partition; undefined when the
// outer-third and outer-two-thirds aggregates disagree beyond tolerance.
DensityEstimate d1_density(const SequenceSet& lambda,
                           const Tolerances& tol = Tolerances{});

// Certifies the union of two certified sequences at level c + d after
// verifying the separation hypotheses: separators sit at the first
// certificate's points, are no longer than a third of each point's gap, keep
// a summable log-length series, and contain none of the second sequence.
UniformityCertificate merge_certified(const UniformityCertificate& c_cert,
                                      const UniformityCertificate& d_cert,
                                      const std::vector<Interval>& separators,
                                      const Tolerances& tol = Tolerances{});

// Certifies lambda minus gamma at level d - c on a fresh adapted partition.
UniformityCertificate remove_subsequence(const UniformityCertificate& d_cert,
                                         const SequenceSet& gamma, double c,
                                         const Tolerances& tol = Tolerances{});

}  // namespace expotype
