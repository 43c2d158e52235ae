// Acceptance suite: thirteen end-to-end checks, one printed line each.
// Exit code is the number of failed checks. Tolerances are pinned inline;
// every target value is computed against an independent oracle or a closed
// form, never against the library's own output.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "expotype/dirichlet.hpp"
#include "expotype/gram.hpp"
#include "expotype/io.hpp"
#include "expotype/measure.hpp"
#include "expotype/partition.hpp"
#include "expotype/typebound.hpp"
#include "expotype/uniform.hpp"

using namespace expotype;

namespace {

constexpr double kPi = 3.14159265358979323846;

int g_failed = 0;

void line(int id, bool ok, const std::string& text) {
  std::printf("criterion %02d: %s - %s\n", id, ok ? "PASS" : "FAIL", text.c_str());
  if (!ok) ++g_failed;
}

void note(const std::string& text) { std::printf("              %s\n", text.c_str()); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, v);
  return buf;
}

SequenceSet atoms_of(const Measure& m) {
  SequenceSet s;
  for (const auto& a : m.atoms) s.points.push_back(a.position);
  return s;
}

SequenceSet integer_range(int lo, int hi, double offset = 0.0) {
  SequenceSet s;
  for (int k = lo; k <= hi; ++k) s.points.push_back(static_cast<double>(k) + offset);
  return s;
}

double star_mass_oracle(const Measure& m, const Interval& star) {
  double acc = 0.0;
  for (const auto& a : m.atoms)
    if (star.contains(a.position)) acc += a.mass;
  for (const auto& p : m.pieces) {
    const double lo = std::max(star.left, p.support.left);
    const double hi = std::min(star.right, p.support.right);
    if (hi > lo) acc += (hi - lo) * p.height;
  }
  return acc;
}

bool has_caveat(const std::vector<std::string>& caveats, const std::string& needle) {
  for (const auto& c : caveats)
    if (c.find(needle) != std::string::npos) return true;
  return false;
}

// ---- criterion 1: pair energy vs brute force ----------------------------

void criterion_energy_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(2026);
  std::uniform_real_distribution<double> pos(-1000.0, 1000.0);
  std::uniform_int_distribution<int> size(2, 500);
  bool all_equal = true;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> pts(static_cast<std::size_t>(size(rng)));
    for (auto& x : pts) x = pos(rng);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 2) continue;

    double oracle = 0.0;
    for (std::size_t k = 0; k < pts.size(); ++k)
      for (std::size_t l = 0; l < pts.size(); ++l)
        if (l != k) oracle += std::log(std::fabs(pts[k] - pts[l]));
    if (pair_energy(pts) != oracle) all_equal = false;
  }
  const double dt = seconds_since(t0);
  line(1, all_equal && dt < 1.0,
       "pair energy equals the brute-force double loop bitwise on 100 random sets (" +
           fmt("%.2f", dt) + " s, budget 1 s)");
}

// ---- criterion 2: integer comb type ------------------------------------

void criterion_comb_type() {
  const auto t0 = std::chrono::steady_clock::now();
  const Measure comb = generate("comb", {.R = 10000.0});
  const SequenceSet lambda = atoms_of(comb);
  const Partition p15 = power_partition(closed(-10000.0, 10000.0), 1.5);
  const TypeEstimate est = type_lower_bound(comb, lambda, p15, 1.0, Tolerances{});

  bool zero_terms = !est.star_mass_diag.terms.empty();
  for (double t : est.star_mass_diag.terms) zero_terms = zero_terms && t == 0.0;
  const bool pass_d1 = est.certificate.verdict == CertVerdict::pass;
  const bool bound_ok = std::fabs(est.lower_bound - kTwoPi) <= 1e-9;
  const UniformityCertificate c12 = certify_uniform(lambda, p15, 1.2, Tolerances{});
  const bool fail_d12 = c12.verdict == CertVerdict::fail;
  const double dt = seconds_since(t0);

  line(2, pass_d1 && zero_terms && bound_ok && fail_d12 && dt < 10.0,
       "integer comb on [-1e4,1e4]: d=1 certifies, unit-atom star terms vanish, bound " +
           fmt("%.12g", est.lower_bound) + " within 1e-9 of 2*pi, d=1.2 fails (" +
           fmt("%.2f", dt) + " s, budget 10 s)");
  if (!pass_d1) note("d=1 verdict: " + std::string(to_string(est.certificate.verdict)));
  if (!fail_d12) note("d=1.2 verdict: " + std::string(to_string(c12.verdict)));
}

// ---- criterion 3: spike search and star-mass law ------------------------

void criterion_spike_search() {
  const Measure spike = generate("spike", {.R = 200.0});
  SearchParams params;
  params.tol.tau_conv = 0.15;  // star-mass tail slope of this family is ~0.13
  const TypeEstimate est =
      search_max_uniform(spike, {0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0}, params);
  const double dhat = est.certificate.d;
  const bool dhat_ok = est.lower_bound > 0.0 && dhat >= 0.95 && dhat <= 1.05;
  const bool bound_ok = std::fabs(est.lower_bound - kTwoPi) <= 1e-9;
  const bool search_series_ok = est.star_mass_diag.verdict == Verdict::convergent;

  // Independent law check on the canonical integer sequence: each star
  // swallows exactly one piece of mass 1/(1+n^2) away from the wide center.
  const SequenceSet ints = integer_range(-200, 200);
  const StarSystem sys = star_intervals(ints, StarBoundary::one_sided);
  const SeriesDiagnostics diag = star_mass_series(spike, ints, params.tol);
  bool mass_ok = diag.terms.size() == ints.points.size();
  bool law_ok = mass_ok;
  std::int64_t anchor = 0;
  for (std::size_t i = 1; i < ints.points.size(); ++i)
    if (std::fabs(ints.points[i]) < std::fabs(ints.points[static_cast<std::size_t>(anchor)]))
      anchor = static_cast<std::int64_t>(i);
  for (std::size_t k = 0; k < diag.index.size() && mass_ok; ++k) {
    const auto i = static_cast<std::size_t>(diag.index[k] + anchor);
    const double n = static_cast<double>(diag.index[k]);
    const double mu = star_mass_oracle(spike, sys.stars[i].interval);
    if (std::fabs(diag.terms[k] - std::log(mu) / (1.0 + n * n)) > 1e-9) mass_ok = false;
    if (std::llabs(diag.index[k]) >= 2 &&
        std::fabs(diag.terms[k] + std::log(1.0 + n * n) / (1.0 + n * n)) > 1e-6)
      law_ok = false;
  }
  const bool law_series_ok = diag.verdict == Verdict::convergent;

  line(3, dhat_ok && bound_ok && search_series_ok && mass_ok && law_ok && law_series_ok,
       "spike measure search: d_hat " + fmt("%.6g", dhat) + " in [0.95,1.05], bound " +
           fmt("%.12g", est.lower_bound) +
           ", star terms follow -log(1+n^2)/(1+n^2) within 1e-6 for |n|>=2 "
           "(mass oracle within 1e-9 at every index)");
  if (!dhat_ok || !bound_ok)
    note("best level " + fmt("%.6g", dhat) + ", bound " + fmt("%.12g", est.lower_bound));
  if (!search_series_ok) note("search star series: " + std::string(to_string(est.star_mass_diag.verdict)));
  if (!mass_ok) note("a star term disagrees with the direct mass computation");
  if (!law_ok) note("a tail star term deviates from the closed form");
}

// ---- criterion 4: half-line measure has no two-sided density ------------

void criterion_halfline_zero() {
  const Measure half = generate("lebesgue_halfline", {.R = 500.0});
  SearchParams params;
  const TypeEstimate est = search_max_uniform(
      half, {0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0}, params);
  const bool bound_zero = est.lower_bound == 0.0;
  const bool caveat_ok = has_caveat(est.caveats, "no density level passed");

  // Two-sided candidates fare no better: negative stars carry no mass.
  const SeriesDiagnostics stars =
      star_mass_series(half, integer_range(-50, 50));
  const bool stars_divergent = stars.verdict == Verdict::divergent && !stars.flag.empty();

  line(4, bound_zero && caveat_ok && stars_divergent,
       "half-line flat measure: every grid level is refused (one-sided density), "
       "bound stays 0; massless left stars force a divergent star series");
  if (!bound_zero) note("unexpected bound " + fmt("%.12g", est.lower_bound));
}

// ---- criterion 5: union of combs, non-additivity ------------------------

void criterion_union_energy() {
  const Measure comb = generate("comb", {.R = 200.0});
  const Measure shifted = generate("shifted_comb", {.R = 200.0});
  const Measure mix = add(comb, shifted);
  const SequenceSet lambda = atoms_of(mix);
  const Partition part = adapted_partition(lambda.points, kDefaultPartitionExponent);
  const Tolerances tol;

  const UniformityCertificate c1 = certify_uniform(lambda, part, 1.0, tol);
  const UniformityCertificate c2 = certify_uniform(lambda, part, 2.0, tol);
  const bool d1_pass = c1.verdict == CertVerdict::pass;
  const bool d2_fail = c2.verdict == CertVerdict::fail;
  const bool d2_energy_divergent = c2.energy_diag.verdict == Verdict::divergent;

  line(5, d1_pass && d2_fail && d2_energy_divergent,
       "comb plus shifted comb at R=200: d=1 passes, d=2 fails via a divergent "
       "energy series");
  note("d=1 " + std::string(to_string(c1.verdict)) + ", d=2 " +
       std::string(to_string(c2.verdict)) + " (density_ok=" +
       (c2.density_ok ? "true" : "false") + ", energy " +
       to_string(c2.energy_diag.verdict) + ")");
  if (!(d1_pass && d2_fail && d2_energy_divergent)) {
    note("known limitation: the shift e^(-|n|) falls below half an ulp of n for");
    note("|n| >= 34, so in binary64 the two atom sets coincide there. The union");
    note("then thins to one atom per integer outside |n| < 34, the d=2 claim dies");
    note("on the density condition, and the energy series never sees the");
    note("log e^(-|n|) blow-up at this window size.");
    const Measure mix30 = add(generate("comb", {.R = 30.0}),
                              generate("shifted_comb", {.R = 30.0}));
    const SequenceSet l30 = atoms_of(mix30);
    const UniformityCertificate c30 = certify_uniform(
        l30, adapted_partition(l30.points, kDefaultPartitionExponent), 2.0, tol);
    note(std::string("at R=30 (gaps representable): density_ok=") +
         (c30.density_ok ? "true" : "false") + ", energy " +
         to_string(c30.energy_diag.verdict) + ", verdict " + to_string(c30.verdict) +
         " - the energy mechanism is real at windows where the gaps exist");
  }
}

// ---- criterion 6: frostman doubling ------------------------------------

void criterion_frostman_doubling() {
  const Measure leb = generate("lebesgue", {.R = 2000.0});
  SearchParams params;
  bool leb_ok = true;
  std::string detail;
  for (double d : {0.25, 0.5}) {
    const SequenceSet cand = select_candidate(leb, d, params);
    const Partition p = adapted_partition(cand.points, kDefaultPartitionExponent);
    const TypeEstimate est = type_lower_bound(leb, cand, p, d, Tolerances{});
    if (!(est.lower_bound > 0.0)) {
      leb_ok = false;
      detail = "seed estimate at d=" + fmt("%.3g", d) + " did not pass";
      break;
    }
    const DoublingTransform t = frostman_doubling_transform(leb, est, 1.0, 1.0, params);
    bool stars_ok = t.ok && !t.stars.empty();
    for (const auto& s : t.stars) stars_ok = stars_ok && s.ok && s.qualifying >= 3;
    const bool doubled = t.est2.certificate.verdict == CertVerdict::pass &&
                         std::fabs(t.est2.lower_bound - kTwoPi * 2.0 * d) <= 1e-9;
    if (!(stars_ok && doubled)) {
      leb_ok = false;
      detail = "doubling at d=" + fmt("%.3g", d) + ": stars_ok=" +
               (stars_ok ? "true" : "false") + ", est2 bound " +
               fmt("%.12g", t.est2.lower_bound);
      break;
    }
  }

  // The spike is not mass-scaling: its stars concentrate everything in one
  // tiny subinterval, so the part-mass check must flag them.
  const Measure spike = generate("spike", {.R = 200.0});
  SearchParams sp;
  sp.tol.tau_conv = 0.15;
  const SequenceSet ints = integer_range(-200, 200);
  const TypeEstimate sest = type_lower_bound(
      spike, ints, adapted_partition(ints.points, kDefaultPartitionExponent), 1.0,
      sp.tol);
  bool spike_flagged = false;
  bool spike_withheld = false;
  if (sest.lower_bound > 0.0) {
    const DoublingTransform st = frostman_doubling_transform(spike, sest, 1.0, 1.0, sp);
    std::size_t flagged = 0;
    for (const auto& s : st.stars)
      if (s.flag == "fewer than 3 qualifying parts") ++flagged;
    spike_flagged = !st.ok && flagged > 0;
    spike_withheld = st.est2.lower_bound == 0.0;
  }

  line(6, leb_ok && spike_flagged && spike_withheld,
       "flat measure doubles 0.25->0.5 and 0.5->1.0 with >=3 qualifying parts per "
       "star; the spike transform is flagged and its doubled estimate withheld");
  if (!leb_ok) note(detail);
  if (!spike_flagged) note("spike stars were not flagged as expected");
}

// ---- criterion 7: measure splitting ------------------------------------

void criterion_split() {
  const Measure comb = generate("comb", {.R = 2000.0});
  const SequenceSet lambda = atoms_of(comb);
  const Partition p15 = adapted_partition(lambda.points, 1.5);
  const TypeEstimate est = type_lower_bound(comb, lambda, p15, 1.0, Tolerances{});
  if (!(est.lower_bound > 0.0)) {
    line(7, false, "comb split: seed certificate did not pass");
    return;
  }
  const SplitResult sr = split_measure(comb, est, 0.5, 0.5);
  const bool b1 = std::fabs(sr.est1.lower_bound - kPi) <= 1e-9;
  const bool b2 = std::fabs(sr.est2.lower_bound - kPi) <= 1e-9;

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> center(-2100.0, 2100.0);
  std::uniform_real_distribution<double> width(0.0, 100.0);
  bool conserved = true;
  for (int k = 0; k < 1000; ++k) {
    const double a = center(rng);
    const Interval probe = closed(a, a + width(rng));
    if (mass(sr.m1, probe) + mass(sr.m2, probe) != mass(comb, probe)) conserved = false;
  }

  line(7, b1 && b2 && conserved,
       "comb split at 1/2 + 1/2: both halves certify with bounds " +
       fmt("%.12g", sr.est1.lower_bound) + " and " + fmt("%.12g", sr.est2.lower_bound) +
       " (pi within 1e-9), and masses add back exactly on 1000 random probes");
  if (!b1) note("first bound: " + fmt("%.12g", sr.est1.lower_bound) + " with caveats");
  if (!b2) note("second bound: " + fmt("%.12g", sr.est2.lower_bound));
  if (!conserved) note("a probe interval lost mass");
}

// ---- criterion 8: merge of interleaved sequences ------------------------

void criterion_merge() {
  const SequenceSet zs = integer_range(-400, 400);
  const SequenceSet halves = integer_range(-400, 400, 0.5);
  const Tolerances tol;
  const UniformityCertificate left =
      certify_uniform(zs, adapted_partition(zs.points, kDefaultPartitionExponent), 1.0, tol);
  const UniformityCertificate right = certify_uniform(
      halves, adapted_partition(halves.points, kDefaultPartitionExponent), 1.0, tol);

  std::vector<Interval> seps;
  for (double x : zs.points) seps.push_back(closed(x - 1.0 / 6.0, x + 1.0 / 6.0));
  bool merged_ok = false;
  std::string merged_msg;
  try {
    const UniformityCertificate merged = merge_certified(left, right, seps, tol);
    merged_ok = merged.verdict == CertVerdict::pass && merged.d == 2.0 &&
                merged.lambda.points.size() == zs.points.size() + halves.points.size();
    if (!merged_ok) merged_msg = std::string("union verdict ") + to_string(merged.verdict);
  } catch (const std::exception& e) {
    merged_msg = e.what();
  }

  // A sequence running through the separators must be rejected by name.
  bool rejected_ok = false;
  const SequenceSet inside = integer_range(-400, 400, 0.1);
  const UniformityCertificate bad = certify_uniform(
      inside, adapted_partition(inside.points, kDefaultPartitionExponent), 1.0, tol);
  try {
    merge_certified(left, bad, seps, tol);
  } catch (const std::invalid_argument& e) {
    rejected_ok = std::string(e.what()) == "merge: separation violated";
  }

  line(8, merged_ok && rejected_ok,
       "integers + half-integers with length-1/3 separators certify at 2; a "
       "sequence inside the separators is rejected as 'merge: separation violated'");
  if (!merged_ok) note("merge failed: " + merged_msg);
}

// ---- criterion 9: growth integral --------------------------------------

void criterion_growth() {
  const Measure flat = generate("lebesgue", {.R = 10000.0});
  const SeriesDiagnostics g = growth_log_integral(flat);
  const double target = 0.5 * kPi * std::log(2.0);
  const bool flat_ok = g.verdict == Verdict::convergent && !g.partial_sums.empty() &&
                       std::fabs(g.partial_sums.back() - target) <= 1e-4;

  const bool spike_divergent =
      growth_log_integral(generate("spike", {.R = 200.0})).verdict == Verdict::divergent;
  const Measure sharp = generate("sharpness", {.R = 200.0});
  const bool sharp_divergent = growth_log_integral(sharp).verdict == Verdict::divergent;

  SearchParams params;
  const TypeEstimate est = search_max_uniform(
      sharp, {0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0}, params);
  const bool sharp_bound = std::fabs(est.lower_bound - kTwoPi) <= 1e-9;

  line(9, flat_ok && spike_divergent && sharp_divergent && sharp_bound,
       "growth integral: flat density gives (pi/2)log2 within 1e-4 (" +
           fmt("%.8g", g.partial_sums.empty() ? 0.0 : g.partial_sums.back()) +
           "); spike and sharpness profiles diverge, yet sharpness still "
           "certifies bound " + fmt("%.12g", est.lower_bound));
  if (!flat_ok) note("flat value off target " + fmt("%.8g", target));
  if (!sharp_bound) note("sharpness bound " + fmt("%.12g", est.lower_bound));
}

// ---- criterion 10: singular-value scan ----------------------------------

void criterion_gram() {
  const auto t0 = std::chrono::steady_clock::now();
  DiscretizedMeasure dm;
  for (int k = 0; k < 128; ++k) dm.nodes.emplace_back(-63.5 + k, 1.0);

  GramConfig cfg;
  std::vector<double> a_grid;
  for (int i = 0; i < 33; ++i)
    a_grid.push_back(kPi + (3.0 * kPi - kPi) * i / 32.0);
  const GramScanReport rep = sigma_min_scan(dm, a_grid, cfg);
  const bool transition_ok =
      rep.has_transition && std::fabs(rep.transition_estimate - kTwoPi) <= 0.15 * kTwoPi;

  GramConfig nested = cfg;
  nested.nested_freqs = true;
  bool monotone = true;
  double prev = -1.0;
  for (double a : {kPi, 1.5 * kPi, 2.0 * kPi, 2.5 * kPi, 3.0 * kPi}) {
    const double s = sigma_min(exponential_matrix(dm, frequency_grid(a, dm.nodes.size(), nested)));
    if (s < prev - 1e-10) monotone = false;
    prev = s;
  }

  DiscretizedMeasure shifted = dm;
  for (auto& n : shifted.nodes) n.first += 17.25;
  const std::vector<double> f2 = frequency_grid(kTwoPi, dm.nodes.size(), cfg);
  const double s_base = sigma_min(exponential_matrix(dm, f2));
  const double s_shift = sigma_min(exponential_matrix(shifted, f2));
  const bool translate_ok = std::fabs(s_base - s_shift) <= 1e-10;

  const double dt = seconds_since(t0);
  line(10, transition_ok && monotone && translate_ok && dt < 60.0,
       "singular-value scan on 128 unit nodes: transition " +
           fmt("%.6g", rep.transition_estimate) + " within 15% of 2*pi, nested grids "
           "monotone within 1e-10, translation invariant within 1e-10 (" +
           fmt("%.1f", dt) + " s, budget 60 s)");
  if (!transition_ok)
    note(std::string("has_transition=") + (rep.has_transition ? "true" : "false") +
         ", estimate " + fmt("%.6g", rep.transition_estimate));
  if (!translate_ok)
    note("translation drift " + fmt("%.3g", std::fabs(s_base - s_shift)));
}

// ---- criterion 11: dirichlet residuals ----------------------------------

namespace quadrature {

double composite_simpson(const std::function<double(double)>& f, double a, double b,
                         int panels) {
  const double h = (b - a) / (2.0 * panels);
  double acc = f(a) + f(b);
  for (int k = 1; k < 2 * panels; ++k) acc += (k % 2 ? 4.0 : 2.0) * f(a + k * h);
  return acc * h / 3.0;
}

double g_antideriv(double u) { return u == 0.0 ? 0.0 : u * std::log(std::fabs(u)) - u; }

double norm_oracle(const PiecewiseLinearProfile& phi, int panels) {
  double acc = 0.0;
  for (const auto& si : phi.segments) {
    if (si.slope == 0.0) continue;
    auto f = [&](double x) {
      double inner = 0.0;
      for (const auto& sj : phi.segments)
        if (sj.slope != 0.0)
          inner += sj.slope *
                   (g_antideriv(sj.span.right - x) - g_antideriv(sj.span.left - x));
      return si.slope * inner;
    };
    acc += composite_simpson(f, si.span.left, si.span.right, panels);
  }
  return -acc / kPi;
}

}  // namespace quadrature

void criterion_dirichlet() {
  std::vector<double> residuals;
  for (int n : {25, 50, 100, 200}) {
    const Interval support = half_open(0.25, n + 0.25);
    SequenceSet lambda;
    std::vector<Interval> ramps;
    for (int m = 1; m <= n; ++m) {
      lambda.points.push_back(m);
      ramps.push_back(closed(m - 0.25, m + 0.25));
    }
    residuals.push_back(
        std::fabs(claim_residual(lambda, ramps, 1.0, support).residual_over_s2));
  }
  const double r_min = *std::min_element(residuals.begin(), residuals.end());
  const double r_max = *std::max_element(residuals.begin(), residuals.end());
  const bool factor_ok = r_max <= 3.0 * std::max(r_min, 1e-6);

  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  bool quad_ok = true;
  for (int trial = 0; trial < 20; ++trial) {
    const double length = 5.0 + 15.0 * unif(rng);
    const int k = 2 + static_cast<int>(rng() % 5);
    const double spacing = length / (k + 1);
    std::vector<Interval> ramps;
    for (int i = 1; i <= k; ++i) {
      const double c = i * spacing + 0.2 * spacing * (unif(rng) - 0.5);
      const double h = (0.05 + 0.25 * unif(rng)) * spacing * 0.5;
      ramps.push_back(closed(c - h, c + h));
    }
    const PiecewiseLinearProfile phi =
        build_profile(closed(0.0, length), ramps, k / length);
    const double lib = dirichlet_norm(phi);
    const double quad = quadrature::norm_oracle(phi, 2048);
    if (std::fabs(lib - quad) > 1e-6 * std::max(1.0, std::fabs(lib))) quad_ok = false;
  }

  line(11, factor_ok && quad_ok,
       "profile-norm residuals stay within a factor 3 across sizes 25..200 "
       "(min " + fmt("%.3g", r_min) + ", max " + fmt("%.3g", r_max) +
       "); norm matches adaptive quadrature within 1e-6 on 20 random profiles");
  if (!factor_ok) note("residual spread exceeded the factor-3 budget");
  if (!quad_ok) note("a profile norm disagreed with quadrature");
}

// ---- criterion 12: shortness verdicts -----------------------------------

void criterion_shortness() {
  const Tolerances tol;
  const bool dyadic_divergent =
      shortness_series(dyadic_partition(1048576.0), tol).verdict == Verdict::divergent;
  bool powers_ok = true;
  for (double p : {1.2, 1.5, 2.0}) {
    // W = 1e5 keeps even the coarse p=2 grid (634 cells) past the trend
    // resolution of the tail fit.
    if (shortness_series(power_partition(100000.0, p), tol).verdict != Verdict::convergent)
      powers_ok = false;
  }
  line(12, dyadic_divergent && powers_ok,
       "shortness: dyadic breakpoints diverge, power breakpoints (p = 1.2, 1.5, 2) "
       "converge");
}

// ---- criterion 13: CLI determinism --------------------------------------

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return "<unreadable:" + path + ">";
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(EXPOTYPE_BIN) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void criterion_cli_determinism() {
  namespace fs = std::filesystem;
  fs::create_directories("acc_tmp");
  const std::string dir = "acc_tmp/";

  // Fixtures shared by the pipelines.
  bool ok = run_cli("gen --example comb --R 50 --out " + dir + "comb.json") == 0;
  ok = ok && run_cli("gen --example comb --R 2000 --out " + dir + "comb_wide.json") == 0;
  ok = ok && run_cli("gen --example comb --R 4 --out " + dir + "comb4.json") == 0;
  ok = ok && run_cli("gen --example lebesgue --R 400 --out " + dir + "leb.json") == 0;
  ok = ok && run_cli("gen --example spike --R 40 --out " + dir + "spike.json") == 0;
  ok = ok && run_cli("type-bound --in " + dir + "comb_wide.json --d 1 --partition-p 1.5 "
                     "--out " + dir + "est_wide.json") == 0;
  ok = ok && run_cli("type-bound --in " + dir + "leb.json --d 0.25 --out " + dir +
                     "leb_est.json") == 0;
  {
    const Measure spike = generate("spike", {.R = 40.0});
    SequenceSet centers;
    for (const auto& p : spike.pieces)
      centers.points.push_back(p.support.left + 0.5 * p.support.length());
    io::write_artifact(dir + "spike_seq.json", io::to_json(centers));
  }
  if (!ok) {
    line(13, false, "CLI determinism: fixture generation failed");
    return;
  }

  const std::vector<std::pair<std::string, std::string>> pipelines = {
      {"gen", "gen --example comb --R 50 --out "},
      {"certify", "certify --in " + dir + "comb.json --d 1 --out "},
      {"type-bound", "type-bound --in " + dir + "comb.json --d 1 --out "},
      {"search", "search --in " + dir + "comb.json --d-grid 0.5:1:0.5 --out "},
      {"split",
       "split --in " + dir + "comb_wide.json --est " + dir + "est_wide.json --c1 0.5 "
       "--c2 0.5 --out "},
      {"frostman-double",
       "frostman-double --in " + dir + "leb.json --est " + dir + "leb_est.json "
       "--alpha 1 --c 1 --out "},
      {"growth", "growth --in " + dir + "leb.json --format csv --out "},
      {"weights",
       "weights --in " + dir + "spike.json --seq " + dir + "spike_seq.json "
       "--adversarial --out "},
      {"gram-scan",
       "gram-scan --in " + dir + "comb4.json --a-lo 0.5 --a-hi 2 --a-count 4 --out "},
      {"dirichlet-check", "dirichlet-check --n-list 10 20 --out "},
      {"compare",
       "compare --est " + dir + "est_wide.json --gram " + dir + "gram_fix.json --out "},
  };
  // The compare pipeline needs a scan artifact on disk first.
  run_cli("gram-scan --in " + dir + "comb4.json --a-lo 0.5 --a-hi 2 --a-count 4 --out " +
          dir + "gram_fix.json");

  bool all_match = true;
  std::string mismatched;
  for (const auto& [name, stem] : pipelines) {
    const std::string out1 = dir + name + "_run1.out";
    const std::string out2 = dir + name + "_run2.out";
    const int rc1 = run_cli(stem + out1);
    const int rc2 = run_cli(stem + out2);
    const bool match =
        (rc1 == 0 || rc1 == 2) && rc1 == rc2 && slurp(out1) == slurp(out2);
    if (!match) {
      all_match = false;
      mismatched += (mismatched.empty() ? "" : ", ") + name;
    }
  }
  line(13, all_match,
       "all 11 CLI pipelines rerun byte-identically with identical flags");
  if (!all_match) note("mismatched pipelines: " + mismatched);
}

}  // namespace

int main() {
  std::printf("acceptance run: 13 criteria\n");
  criterion_energy_oracle();
  criterion_comb_type();
  criterion_spike_search();
  criterion_halfline_zero();
  criterion_union_energy();
  criterion_frostman_doubling();
  criterion_split();
  criterion_merge();
  criterion_growth();
  criterion_gram();
  criterion_dirichlet();
  criterion_shortness();
  criterion_cli_determinism();
  std::printf("acceptance summary: %d/13 passed\n", 13 - g_failed);
  return g_failed == 0 ? 0 : 1;
}
