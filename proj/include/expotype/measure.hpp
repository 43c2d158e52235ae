#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "expotype/interval.hpp"
#include "expotype/series.hpp"

namespace expotype {

// Weighted atom of a purely atomic measure.
struct Atom {
  double position = 0.0;
  double mass = 0.0;
};

// Constant-density piece of an absolutely continuous measure.
struct Piece {
  Interval support;
  double height = 0.0;
};

enum class MeasureKind { atomic, density };

// Finite positive measure on the line, either purely atomic or given by a
// piecewise-constant density.  `window` is the interval the measure was
// generated/truncated on; all support lies inside it.
struct Measure {
  MeasureKind kind = MeasureKind::atomic;
  Interval window;
  std::vector<Atom> atoms;    // kind == atomic: positions strictly increasing, masses > 0
  std::vector<Piece> pieces;  // kind == density: disjoint, sorted, heights >= 0

  void validate() const;  // throws std::invalid_argument naming the broken invariant
  double total_mass() const;
};

// mu(i), respecting endpoint closure for atoms.  Finitely additive by
// construction: atoms are summed in position order, pieces by overlap length.
double mass(const Measure& m, const Interval& i);

// Pointwise density evaluation (0 off support).  Density measures only.
double density_at(const Measure& m, double x);

// Truncated integral of d(mu)/(1+x^2) over the window, reported as a
// profile over nested sub-windows (geometrically growing, innermost first).
// Each term is the increment between consecutive sub-windows; the final
// partial sum is the full truncated value.  Closed form per atom and piece.
SeriesDiagnostics poisson_functional(const Measure& m, const Tolerances& tol);

struct FrostmanSample {
  double center = 0.0;
  double scale = 0.0;
  double ball_mass = 0.0;  // mu((center-scale, center+scale))
  double ratio = 0.0;      // ball_mass / scale^alpha_hat
};

struct FrostmanReport {
  double alpha_hat = 0.0;  // largest grid alpha compatible with a finite constant
  double c_hat = 0.0;      // minimax constant at alpha_hat
  std::vector<FrostmanSample> table;
  FrostmanSample worst;    // sample attaining c_hat
  double mass_slope = 0.0; // fitted log-mass vs log-scale slope of per-scale maxima
};

// Fits mu(B(x,eps)) < C * eps^alpha on the sample grid.  alpha runs over
// {0.01, 0.02, ..., 1.00}; alpha_hat is the largest grid value not exceeding
// the fitted mass slope (plus a small fitting allowance), i.e. the largest
// exponent whose constant does not blow up as scales shrink.
FrostmanReport frostman_scan(const Measure& m,
                             const std::vector<double>& scales,
                             const std::vector<double>& centers);

struct DoublingSample {
  double center = 0.0;
  double radius = 0.0;
  double inner_mass = 0.0;  // mu((x-r, x+r))
  double outer_mass = 0.0;  // mu((x-2r, x+2r))
  double ratio = 0.0;
};

struct DoublingReport {
  double c_hat = 0.0;  // max observed outer/inner ratio
  std::vector<DoublingSample> table;
  bool defined = false;  // false when every inner mass vanished
};

DoublingReport doubling_scan(const Measure& m,
                             const std::vector<double>& centers,
                             const std::vector<double>& radii);

// M_f(x) = essential sup of the density over [-x, x]: the tallest piece
// overlapping the symmetric window in a set of positive length.
std::vector<std::pair<double, double>> ess_sup_profile(const Measure& m,
                                                       const std::vector<double>& xs);

// Default sampling centers for the scans: a uniform grid over the window
// thinned to points carrying local mass, plus the heaviest atoms/pieces.
std::vector<double> default_scan_centers(const Measure& m, std::size_t budget = 64);

// ---- named example generators ------------------------------------------

struct GenerateParams {
  double R = 10.0;              // half-width of the requested window
  int depth = 12;               // cantor_periodic construction depth
  std::string growth = "exp";   // sharpness profile: "exp" or "pow:<k>"
  int cells_per_unit = 4;       // discretization for smooth densities
};

// Named measures used throughout the tests and the CLI.  Deterministic:
// identical (name, params) produce identical measures.  The stored window
// is the hull of [-R, R] and the generated support.
Measure generate(const std::string& example, const GenerateParams& params);

std::vector<std::string> generator_names();

// Restriction of m to a union of disjoint sorted intervals (atoms kept by
// membership, pieces clipped).  Used by the measure-splitting procedure.
Measure restrict(const Measure& m, const std::vector<Interval>& parts);

// Complement restriction: m minus restrict(m, parts).
Measure restrict_complement(const Measure& m, const std::vector<Interval>& parts);

// Pointwise sum of two measures of the same kind; equal atom positions merge.
Measure add(const Measure& a, const Measure& b);

}  // namespace expotype
