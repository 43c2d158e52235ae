#include "expotype/partition.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace expotype {

namespace {

std::size_t zero_index(const std::vector<double>& b) {
  auto it = std::lower_bound(b.begin(), b.end(), 0.0);
  if (it == b.end() || *it != 0.0)
    throw std::invalid_argument("partition: breakpoints must include 0");
  return static_cast<std::size_t>(it - b.begin());
}

// One arm of breakpoints at k^exponent, clamped to end exactly at `bound`.
std::vector<double> power_arm(double bound, double exponent) {
  std::vector<double> arm;
  if (!(bound > 0.0)) return arm;
  const double k_end = std::pow(bound, 1.0 / exponent);
  if (k_end > 5e6)
    throw std::invalid_argument("power_partition: span too wide for this exponent");
  for (std::int64_t k = 1;; ++k) {
    const double v = std::pow(static_cast<double>(k), exponent);
    if (v >= bound) break;
    arm.push_back(v);
  }
  arm.push_back(bound);
  return arm;
}

}  // namespace

void Partition::validate() const {
  if (breakpoints.size() < 2)
    throw std::invalid_argument("partition: needs at least two breakpoints");
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    if (!std::isfinite(breakpoints[i - 1]) || !(breakpoints[i - 1] < breakpoints[i]))
      throw std::invalid_argument("partition: breakpoints must be finite and strictly increasing");
  }
  zero_index(breakpoints);
}

std::size_t Partition::size() const { return breakpoints.size() - 1; }

std::int64_t Partition::n_min() const {
  return -static_cast<std::int64_t>(zero_index(breakpoints));
}

std::int64_t Partition::n_max() const {
  return static_cast<std::int64_t>(breakpoints.size()) - 2 -
         static_cast<std::int64_t>(zero_index(breakpoints));
}

Interval Partition::interval(std::int64_t n) const {
  const auto z = static_cast<std::int64_t>(zero_index(breakpoints));
  const std::int64_t j = z + n;
  if (j < 0 || j + 1 >= static_cast<std::int64_t>(breakpoints.size()))
    throw std::out_of_range("partition: interval index out of range");
  Interval i;
  i.left = breakpoints[static_cast<std::size_t>(j)];
  i.right = breakpoints[static_cast<std::size_t>(j) + 1];
  i.closed_left = n <= 0;
  // The outermost negative interval keeps its right end so the span's
  // endpoints are always covered.
  i.closed_right = n >= 0 || j + 2 == static_cast<std::int64_t>(breakpoints.size());
  return i;
}

double Partition::origin_distance(std::int64_t n) const {
  const Interval i = interval(n);
  if (n >= 0) return i.left;
  return -i.right;
}

std::int64_t Partition::index_of(double x) const {
  const auto z = static_cast<std::int64_t>(zero_index(breakpoints));
  auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), x);
  std::int64_t j = (it - breakpoints.begin()) - 1;
  j = std::max<std::int64_t>(0, std::min<std::int64_t>(j, static_cast<std::int64_t>(breakpoints.size()) - 2));
  for (std::int64_t cand : {j, j - 1, j + 1}) {
    if (cand < 0 || cand + 1 >= static_cast<std::int64_t>(breakpoints.size())) continue;
    if (interval(cand - z).contains(x)) return cand - z;
  }
  throw std::out_of_range("partition: value not covered by the partition");
}

bool Partition::covers(double x) const {
  return x >= breakpoints.front() && x <= breakpoints.back();
}

SeriesDiagnostics shortness_series(const Partition& p, const Tolerances& tol) {
  p.validate();
  std::vector<std::int64_t> order = outward_index_order(p.n_min(), p.n_max());
  std::vector<double> terms;
  terms.reserve(order.size());
  for (std::int64_t n : order) {
    const double len = p.interval(n).length();
    const double dist = p.origin_distance(n);
    terms.push_back(len * len / (1.0 + dist * dist));
  }
  return finalize_series(std::move(order), std::move(terms), tol);
}

Partition power_partition(const Interval& span, double exponent) {
  if (!(exponent > 0.0))
    throw std::invalid_argument("power_partition: exponent must be positive");
  span.validate("power_partition.span");
  const double hi = std::max(span.right, 0.0);
  const double lo = std::min(span.left, 0.0);
  if (hi == lo) throw std::invalid_argument("power_partition: span has no extent");

  Partition p;
  std::vector<double> neg = power_arm(-lo, exponent);
  for (auto it = neg.rbegin(); it != neg.rend(); ++it) p.breakpoints.push_back(-*it);
  p.breakpoints.push_back(0.0);
  std::vector<double> pos = power_arm(hi, exponent);
  p.breakpoints.insert(p.breakpoints.end(), pos.begin(), pos.end());
  p.validate();
  return p;
}

Partition power_partition(double R, double exponent) {
  return power_partition(closed(-R, R), exponent);
}

Partition dyadic_partition(double R) {
  if (!(R > 0.0)) throw std::invalid_argument("dyadic_partition: R must be positive");
  std::vector<double> arm;
  for (double v = 1.0; v < R; v *= 2.0) arm.push_back(v);
  arm.push_back(R);
  Partition p;
  for (auto it = arm.rbegin(); it != arm.rend(); ++it) p.breakpoints.push_back(-*it);
  p.breakpoints.push_back(0.0);
  p.breakpoints.insert(p.breakpoints.end(), arm.begin(), arm.end());
  p.validate();
  return p;
}

Partition adapted_partition(const std::vector<double>& points, double exponent) {
  if (points.empty())
    throw std::invalid_argument("adapted_partition: needs at least one point");
  for (std::size_t i = 1; i < points.size(); ++i)
    if (!(points[i - 1] < points[i]))
      throw std::invalid_argument("adapted_partition: points must be strictly increasing");

  const double lo = std::min(points.front(), 0.0);
  const double hi = std::max(points.back(), 0.0);
  if (lo == hi)
    throw std::invalid_argument("adapted_partition: points span a single value");
  Partition base = power_partition(closed(lo, hi), exponent);

  auto snap = [&](double b) {
    auto it = std::lower_bound(points.begin(), points.end(), b);
    if (it == points.begin() || it == points.end()) return b;
    if (*it == b) {
      // Breakpoint collides with a point; move to the nearer adjacent gap
      // midpoint.
      const bool has_left = it != points.begin();
      const bool has_right = it + 1 != points.end();
      const double ml = has_left ? 0.5 * (*(it - 1) + b) : b;
      const double mr = has_right ? 0.5 * (b + *(it + 1)) : b;
      if (!has_left) return mr;
      if (!has_right) return ml;
      return (b - ml <= mr - b) ? ml : mr;
    }
    return 0.5 * (*(it - 1) + *it);
  };

  std::vector<double> snapped;
  snapped.reserve(base.breakpoints.size());
  for (std::size_t i = 0; i < base.breakpoints.size(); ++i) {
    const double b = base.breakpoints[i];
    const bool edge = i == 0 || i + 1 == base.breakpoints.size();
    snapped.push_back((edge || b == 0.0) ? b : snap(b));
  }
  std::sort(snapped.begin(), snapped.end());
  snapped.erase(std::unique(snapped.begin(), snapped.end()), snapped.end());

  Partition p;
  p.breakpoints = std::move(snapped);
  p.validate();
  return p;
}

}  // namespace expotype
