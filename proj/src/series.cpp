#include "expotype/series.hpp"

#include <cmath>
#include <stdexcept>

namespace expotype {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::convergent: return "convergent";
    case Verdict::divergent: return "divergent";
    default: return "inconclusive";
  }
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size())
    throw std::invalid_argument("least_squares_slope: size mismatch");
  const std::size_t n = x.size();
  if (n < 2) return 0.0;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) { mx += x[i]; my += y[i]; }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    sxx += dx * dx;
    sxy += dx * (y[i] - my);
  }
  if (sxx == 0.0) return 0.0;
  return sxy / sxx;
}

std::vector<std::int64_t> outward_index_order(std::int64_t n_lo, std::int64_t n_hi) {
  std::vector<std::int64_t> order;
  if (n_lo > n_hi) return order;
  order.reserve(static_cast<std::size_t>(n_hi - n_lo + 1));
  for (std::int64_t step = 0;; ++step) {
    const std::int64_t pos = step;
    const std::int64_t neg = -1 - step;
    const bool pos_in = pos >= n_lo && pos <= n_hi;
    const bool neg_in = neg >= n_lo && neg <= n_hi;
    if (!pos_in && !neg_in) break;
    if (pos_in) order.push_back(pos);
    if (neg_in) order.push_back(neg);
  }
  // Ranges that do not straddle the origin (one-sided data) fall back to
  // plain left-to-right order.
  if (order.empty()) {
    for (std::int64_t n = n_lo; n <= n_hi; ++n) order.push_back(n);
  }
  return order;
}

SeriesDiagnostics finalize_series(std::vector<std::int64_t> index,
                                  std::vector<double> terms,
                                  const Tolerances& tol) {
  if (index.size() != terms.size())
    throw std::invalid_argument("finalize_series: index/terms size mismatch");
  SeriesDiagnostics d;
  d.index = std::move(index);
  d.terms = std::move(terms);
  d.partial_sums.resize(d.terms.size());

  bool bad = false;
  double acc = 0.0;
  for (std::size_t i = 0; i < d.terms.size(); ++i) {
    if (!std::isfinite(d.terms[i])) bad = true;
    acc += d.terms[i];
    d.partial_sums[i] = acc;
  }
  if (bad) {
    d.tail_slope = std::numeric_limits<double>::infinity();
    d.verdict = Verdict::divergent;
    d.flag = "non-finite term";
    return d;
  }

  const std::size_t n = d.partial_sums.size();
  if (n == 0) {
    d.verdict = Verdict::inconclusive;
    d.flag = "empty series";
    return d;
  }
  std::size_t first = (n >= 6) ? (2 * n) / 3 : 0;
  if (n - first < 2) first = n - std::min<std::size_t>(n, 2);
  std::vector<double> xs, ys;
  xs.reserve(n - first);
  ys.reserve(n - first);
  for (std::size_t i = first; i < n; ++i) {
    xs.push_back(std::log(static_cast<double>(i + 1)));
    ys.push_back(d.partial_sums[i]);
  }
  d.tail_slope = least_squares_slope(xs, ys);

  const double mag = std::fabs(d.tail_slope);
  if (mag < tol.tau_conv) d.verdict = Verdict::convergent;
  else if (mag > tol.tau_div) d.verdict = Verdict::divergent;
  else d.verdict = Verdict::inconclusive;
  return d;
}

}  // namespace expotype
