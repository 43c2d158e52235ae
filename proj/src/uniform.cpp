#include "expotype/uniform.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <stdexcept>

namespace expotype {

void SequenceSet::validate() const {
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!std::isfinite(points[i]))
      throw std::invalid_argument("sequence: points must be finite");
    if (i > 0 && !(points[i - 1] < points[i]))
      throw std::invalid_argument("sequence: points must be strictly increasing");
  }
}

const char* to_string(CertVerdict v) {
  switch (v) {
    case CertVerdict::pass: return "pass";
    case CertVerdict::fail: return "fail";
    default: return "inconclusive";
  }
}

double pair_energy(const std::vector<double>& points) {
  for (std::size_t i = 1; i < points.size(); ++i)
    if (!(points[i - 1] < points[i]))
      throw std::invalid_argument("pair_energy: points must be strictly increasing");
  double acc = 0.0;
  for (std::size_t k = 0; k < points.size(); ++k)
    for (std::size_t l = 0; l < points.size(); ++l)
      if (l != k) acc += std::log(std::fabs(points[k] - points[l]));
  return acc;
}

double pair_energy(const SequenceSet& lambda) {
  lambda.validate();
  return pair_energy(lambda.points);
}

std::vector<std::size_t> interval_counts(const SequenceSet& lambda, const Partition& p) {
  lambda.validate();
  p.validate();
  for (double x : lambda.points)
    if (!p.covers(x))
      throw std::invalid_argument("interval_counts: point outside the partition span");

  std::vector<std::size_t> counts(p.size(), 0);
  std::size_t pos = 0;
  for (std::int64_t n = p.n_min(); n <= p.n_max(); ++n) {
    const Interval cut = p.interval(n);
    std::size_t c = 0;
    while (pos < lambda.points.size() && cut.contains(lambda.points[pos])) {
      ++pos;
      ++c;
    }
    counts[static_cast<std::size_t>(n - p.n_min())] = c;
  }
  return counts;
}

StarSystem star_intervals(const SequenceSet& lambda, StarBoundary boundary) {
  lambda.validate();
  const auto& x = lambda.points;
  if (x.size() < 2)
    throw std::invalid_argument("star_intervals: needs at least two points");

  StarSystem sys;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const bool edge = i == 0 || i + 1 == x.size();
    if (edge && boundary == StarBoundary::drop_edges) continue;
    double gap;
    if (i == 0) {
      gap = x[1] - x[0];
    } else if (i + 1 == x.size()) {
      gap = x[i] - x[i - 1];
    } else {
      gap = std::min(x[i] - x[i - 1], x[i + 1] - x[i]);
    }
    const double r = gap / 6.0;  // star length is gap/3
    sys.stars.push_back(Star{x[i], closed(x[i] - r, x[i] + r)});
  }
  return sys;
}

namespace {

// Aggregate count-per-length over the outer third of one side's rows
// (ordered by distance from the origin). Falls back to the whole side when
// it is too small to split.
bool side_aggregate(const std::vector<DensityRow>& side, double& out) {
  if (side.empty()) return false;
  const std::size_t start = side.size() >= 3 ? (2 * side.size()) / 3 : 0;
  double c = 0.0, len = 0.0;
  for (std::size_t i = start; i < side.size(); ++i) {
    c += static_cast<double>(side[i].count);
    len += side[i].length;
  }
  if (!(len > 0.0)) return false;
  out = c / len;
  return true;
}

}  // namespace

UniformityCertificate certify_uniform(const SequenceSet& lambda, const Partition& p,
                                      double d, const Tolerances& tol) {
  lambda.validate();
  p.validate();
  if (lambda.points.empty())
    throw std::invalid_argument("certify_uniform: sequence is empty");
  if (!(d > 0.0))
    throw std::invalid_argument("certify_uniform: d must be positive");
  for (double x : lambda.points)
    if (!p.covers(x))
      throw std::invalid_argument("certify_uniform: partition does not cover the sequence");

  UniformityCertificate cert;
  cert.lambda = lambda;
  cert.partition = p;
  cert.d = d;
  cert.tolerances = tol;
  cert.window = closed(p.breakpoints.front(), p.breakpoints.back());

  const std::int64_t n_lo = p.n_min();
  const std::int64_t n_hi = p.n_max();
  std::vector<double> terms_by_slot(p.size(), 0.0);
  std::size_t pos = 0;
  for (std::int64_t n = n_lo; n <= n_hi; ++n) {
    const Interval cut = p.interval(n);
    const std::size_t start = pos;
    while (pos < lambda.points.size() && cut.contains(lambda.points[pos])) ++pos;
    const std::size_t count = pos - start;

    const double len = cut.length();
    const double energy =
        count > 1 ? pair_energy(std::vector<double>(lambda.points.begin() + start,
                                                    lambda.points.begin() + pos))
                  : 0.0;
    const double dist = p.origin_distance(n);
    const double dc = static_cast<double>(count);
    const double term = (dc * dc * std::log(len) - energy) / (1.0 + dist * dist);

    cert.counts.push_back(count);
    cert.interval_energies.push_back(energy);
    cert.density_report.push_back(
        DensityRow{n, count, len, len > 0.0 ? dc / len - d : 0.0});
    terms_by_slot[static_cast<std::size_t>(n - n_lo)] = term;
    if (len >= 1.0 && term < 0.0) cert.long_interval_terms_nonnegative = false;
  }

  std::vector<std::int64_t> order = outward_index_order(n_lo, n_hi);
  std::vector<double> terms;
  terms.reserve(order.size());
  for (std::int64_t n : order)
    terms.push_back(terms_by_slot[static_cast<std::size_t>(n - n_lo)]);
  cert.energy_diag = finalize_series(std::move(order), std::move(terms), tol);
  cert.shortness_diag = shortness_series(p, tol);

  std::vector<DensityRow> neg, pose;
  for (const auto& row : cert.density_report)
    (row.n < 0 ? neg : pose).push_back(row);
  std::reverse(neg.begin(), neg.end());  // order by distance from the origin
  // The outermost cell on each side is clipped by the window hull, which by
  // construction ends on a sequence point; its count/length ratio carries a
  // fencepost bias, so it stays out of the aggregate.
  for (auto* side : {&neg, &pose})
    if (side->size() >= 2) side->pop_back();
  cert.density_gap = 0.0;
  // A d-uniform claim is two-sided; a window with no intervals on one side
  // cannot exhibit density d there and fails outright.
  bool both_sides = true;
  for (const auto* side : {&neg, &pose}) {
    double agg;
    if (side_aggregate(*side, agg)) {
      cert.density_gap = std::max(cert.density_gap, std::fabs(agg - d));
    } else {
      both_sides = false;
    }
  }
  cert.density_ok = both_sides && cert.density_gap <= tol.density_tol;

  if (!cert.long_interval_terms_nonnegative)
    cert.flag = "negative energy term on an interval of length >= 1";

  if (!cert.density_ok) {
    cert.verdict = CertVerdict::fail;
  } else if (cert.energy_diag.verdict == Verdict::divergent ||
             cert.shortness_diag.verdict == Verdict::divergent) {
    cert.verdict = CertVerdict::fail;
  } else if (cert.energy_diag.verdict == Verdict::inconclusive ||
             cert.shortness_diag.verdict == Verdict::inconclusive) {
    cert.verdict = CertVerdict::inconclusive;
  } else {
    cert.verdict = CertVerdict::pass;
  }
  return cert;
}

DensityEstimate d1_density(const SequenceSet& lambda, const Tolerances& tol) {
  lambda.validate();
  DensityEstimate est;
  if (lambda.points.empty()) return est;
  const double lo = std::min(lambda.points.front(), 0.0);
  const double hi = std::max(lambda.points.back(), 0.0);
  if (lo == hi) return est;

  const Partition p = power_partition(closed(lo, hi), kDefaultPartitionExponent);
  const std::vector<std::size_t> counts = interval_counts(lambda, p);

  auto aggregate = [&](double fraction) {
    double c = 0.0, len = 0.0;
    for (const auto* sign : {"-", "+"}) {
      std::vector<std::int64_t> side;
      for (std::int64_t n = p.n_min(); n <= p.n_max(); ++n)
        if ((*sign == '-') == (n < 0)) side.push_back(n);
      if (*sign == '-') std::reverse(side.begin(), side.end());
      const std::size_t start =
          side.size() >= 3 ? static_cast<std::size_t>(
                                 static_cast<double>(side.size()) * (1.0 - fraction))
                           : 0;
      for (std::size_t i = start; i < side.size(); ++i) {
        const std::int64_t n = side[i];
        c += static_cast<double>(counts[static_cast<std::size_t>(n - p.n_min())]);
        len += p.interval(n).length();
      }
    }
    return len > 0.0 ? c / len : 0.0;
  };

  const double v_third = aggregate(1.0 / 3.0);
  const double v_two_thirds = aggregate(2.0 / 3.0);
  est.value = v_third;
  est.defined = std::fabs(v_third - v_two_thirds) <= tol.density_tol;
  return est;
}

namespace {

double gap_to_rest(const std::vector<double>& x, std::size_t i) {
  if (x.size() < 2) throw std::invalid_argument("merge: certificate with a lone point");
  if (i == 0) return x[1] - x[0];
  if (i + 1 == x.size()) return x[i] - x[i - 1];
  return std::min(x[i] - x[i - 1], x[i + 1] - x[i]);
}

}  // namespace

UniformityCertificate merge_certified(const UniformityCertificate& c_cert,
                                      const UniformityCertificate& d_cert,
                                      const std::vector<Interval>& separators,
                                      const Tolerances& tol) {
  c_cert.lambda.validate();
  d_cert.lambda.validate();
  if (separators.empty())
    throw std::invalid_argument("merge: no separators given");

  std::vector<Interval> seps = separators;
  std::sort(seps.begin(), seps.end(),
            [](const Interval& a, const Interval& b) { return a.left < b.left; });
  for (std::size_t i = 0; i < seps.size(); ++i) {
    seps[i].validate("merge.separator");
    if (i > 0 && seps[i].left < seps[i - 1].right)
      throw std::invalid_argument("merge: separators overlap");
  }

  const auto& cx = c_cert.lambda.points;
  std::vector<double> lengths(seps.size());
  std::vector<double> centers(seps.size());
  for (std::size_t i = 0; i < seps.size(); ++i) {
    const double center = 0.5 * (seps[i].left + seps[i].right);
    auto it = std::lower_bound(cx.begin(), cx.end(), center);
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_i = 0;
    for (auto cand : {it, it == cx.begin() ? it : it - 1}) {
      if (cand == cx.end()) continue;
      const double dd = std::fabs(*cand - center);
      if (dd < best) {
        best = dd;
        best_i = static_cast<std::size_t>(cand - cx.begin());
      }
    }
    if (!(best <= 1e-9 * std::max(1.0, std::fabs(center))))
      throw std::invalid_argument("merge: separator not centered at a certified point");
    const double gap = gap_to_rest(cx, best_i);
    if (seps[i].length() > gap / 3.0 + 1e-12 * std::max(1.0, gap))
      throw std::invalid_argument("merge: separator too long");
    lengths[i] = seps[i].length();
    centers[i] = center;
  }

  // Index the separator log-length series from the separator nearest 0.
  std::size_t k0 = 0;
  for (std::size_t i = 1; i < centers.size(); ++i)
    if (std::fabs(centers[i]) < std::fabs(centers[k0])) k0 = i;
  const auto z = static_cast<std::int64_t>(k0);
  std::vector<std::int64_t> order =
      outward_index_order(-z, static_cast<std::int64_t>(centers.size()) - 1 - z);
  std::vector<double> terms;
  terms.reserve(order.size());
  for (std::int64_t n : order) {
    const auto i = static_cast<std::size_t>(n + z);
    terms.push_back(std::log(lengths[i]) /
                    (1.0 + static_cast<double>(n) * static_cast<double>(n)));
  }
  const SeriesDiagnostics log_diag = finalize_series(std::move(order), std::move(terms), tol);
  if (log_diag.verdict == Verdict::divergent)
    throw std::invalid_argument("merge: separator log-series divergent");
  if (log_diag.verdict == Verdict::inconclusive)
    throw std::invalid_argument("merge: separator log-series inconclusive");

  for (double x : d_cert.lambda.points) {
    auto it = std::upper_bound(seps.begin(), seps.end(), x,
                               [](double v, const Interval& s) { return v < s.left; });
    if (it != seps.begin() && (it - 1)->contains(x))
      throw std::invalid_argument("merge: separation violated");
  }

  SequenceSet unioned;
  unioned.points.reserve(cx.size() + d_cert.lambda.points.size());
  std::merge(cx.begin(), cx.end(), d_cert.lambda.points.begin(),
             d_cert.lambda.points.end(), std::back_inserter(unioned.points));
  for (std::size_t i = 1; i < unioned.points.size(); ++i)
    if (unioned.points[i - 1] == unioned.points[i])
      throw std::invalid_argument("merge: sequences share a point");

  const Partition fresh = adapted_partition(unioned.points, kDefaultPartitionExponent);
  return certify_uniform(unioned, fresh, c_cert.d + d_cert.d, tol);
}

UniformityCertificate remove_subsequence(const UniformityCertificate& d_cert,
                                         const SequenceSet& gamma, double c,
                                         const Tolerances& tol) {
  d_cert.lambda.validate();
  gamma.validate();
  if (!(c > 0.0) || !(c < d_cert.d))
    throw std::invalid_argument("remove: level c must lie strictly between 0 and d");

  const auto& lx = d_cert.lambda.points;
  for (double g : gamma.points)
    if (!std::binary_search(lx.begin(), lx.end(), g))
      throw std::invalid_argument("remove: gamma not a subset");

  SequenceSet rest;
  std::set_difference(lx.begin(), lx.end(), gamma.points.begin(), gamma.points.end(),
                      std::back_inserter(rest.points));
  const double level = d_cert.d - c;
  if (rest.points.empty()) {
    UniformityCertificate cert;
    cert.partition = d_cert.partition;
    cert.d = level;
    cert.tolerances = tol;
    cert.window = d_cert.window;
    cert.verdict = CertVerdict::fail;
    cert.flag = "empty remainder";
    return cert;
  }
  const Partition fresh = adapted_partition(rest.points, kDefaultPartitionExponent);
  return certify_uniform(rest, fresh, level, tol);
}

}  // namespace expotype
