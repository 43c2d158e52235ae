#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "expotype/config.hpp"
#include "expotype/measure.hpp"

namespace expotype {

// Finite surrogate of a measure: weighted nodes, atoms verbatim or midpoint
// quadrature of the density pieces.
struct DiscretizedMeasure {
  std::vector<std::pair<double, double>> nodes;  // (position, weight > 0)

  void validate() const;
  double total_weight() const;
};

DiscretizedMeasure discretize(const Measure& m, std::size_t nodes_per_piece);

// Frequencies tested against the nodes: either proportional (evenly spaced
// over [0, a] with count ~ kappa * a * n / 2pi) or nested (multiples of a
// fixed spacing, so grids for growing a are supersets of each other).
std::vector<double> frequency_grid(double a, std::size_t n_nodes,
                                   const GramConfig& config);

// Entry (n, j) = sqrt(w_n) * exp(i * s_j * x_n).
Eigen::MatrixXcd exponential_matrix(const DiscretizedMeasure& dm,
                                    const std::vector<double>& freqs);

double sigma_min(const Eigen::MatrixXcd& matrix);

struct GramScanReport {
  std::vector<double> a_grid;
  std::vector<double> sigma_mins;   // at the full node count
  std::vector<double> decay_fits;   // slope of log(sigma/sqrt(M)) per node doubling
  std::size_t n_nodes = 0;
  double kappa = 0.0;
  bool has_transition = false;
  double transition_estimate = 0.0;
  std::string caveat;
};

// Heuristic caveat carried verbatim by every report.
extern const char* const kGramCaveat;

// For each bandwidth a: smallest singular value at the full node count and a
// decay fit over centered nested subsets of n/4, n/2, n nodes. The
// transition estimate is the first a whose decay flattens below the
// configured threshold while sigma_min sits clearly above the numerical
// floor. Grid entries are scanned in parallel up to the EXPOTYPE_THREADS
// cap; assembly is keyed by grid position.
GramScanReport sigma_min_scan(const DiscretizedMeasure& dm,
                              const std::vector<double>& a_grid,
                              const GramConfig& config);

}  // namespace expotype
