#include "expotype/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace expotype {

namespace {

const double kPi = 3.14159265358979323846;

// Antiderivative chain for the log kernel: H'' = log|u|, H(0) = 0.
double kernel_h(double u) {
  if (u == 0.0) return 0.0;
  return 0.5 * u * u * std::log(std::fabs(u)) - 0.75 * u * u;
}

}  // namespace

PiecewiseLinearProfile build_profile(const Interval& support,
                                     const std::vector<Interval>& ramps,
                                     double slope_offset) {
  support.validate("profile.support");
  if (!(support.length() > 0.0))
    throw std::invalid_argument("profile: support must have positive length");

  PiecewiseLinearProfile phi;
  phi.support = support;
  phi.slope_offset = slope_offset;
  phi.ramps = ramps;
  std::sort(phi.ramps.begin(), phi.ramps.end(),
            [](const Interval& a, const Interval& b) { return a.left < b.left; });
  for (std::size_t i = 0; i < phi.ramps.size(); ++i) {
    phi.ramps[i].validate("profile.ramp");
    if (!(phi.ramps[i].length() > 0.0))
      throw std::invalid_argument("profile: zero-length ramp");
    if (phi.ramps[i].left < support.left || phi.ramps[i].right > support.right)
      throw std::invalid_argument("profile: ramp outside the support");
    if (i > 0 && phi.ramps[i].left < phi.ramps[i - 1].right)
      throw std::invalid_argument("profile: overlapping ramps");
  }

  const double rise = static_cast<double>(phi.ramps.size());
  if (std::fabs(slope_offset * support.length() - rise) >
      1e-9 * std::max(1.0, rise))
    throw std::invalid_argument("profile: rise imbalance");

  double cursor = support.left;
  for (const auto& r : phi.ramps) {
    if (r.left > cursor)
      phi.segments.push_back(ProfileSegment{closed(cursor, r.left), -slope_offset});
    phi.segments.push_back(
        ProfileSegment{closed(r.left, r.right), 1.0 / r.length() - slope_offset});
    cursor = r.right;
  }
  if (cursor < support.right)
    phi.segments.push_back(ProfileSegment{closed(cursor, support.right), -slope_offset});
  return phi;
}

double log_rectangle_integral(const Interval& a, const Interval& b) {
  return kernel_h(b.right - a.left) + kernel_h(b.left - a.right) -
         kernel_h(b.right - a.right) - kernel_h(b.left - a.left);
}

double dirichlet_norm(const PiecewiseLinearProfile& phi) {
  double acc = 0.0;
  for (const auto& si : phi.segments) {
    if (si.slope == 0.0) continue;
    for (const auto& sj : phi.segments) {
      if (sj.slope == 0.0) continue;
      acc += si.slope * sj.slope * log_rectangle_integral(si.span, sj.span);
    }
  }
  return -acc / kPi;
}

ClaimCheck claim_residual(const SequenceSet& lambda_in_s,
                          const std::vector<Interval>& ramps, double slope_offset,
                          const Interval& support) {
  lambda_in_s.validate();
  const PiecewiseLinearProfile phi = build_profile(support, ramps, slope_offset);

  std::vector<double> inside;
  for (double x : lambda_in_s.points)
    if (support.contains(x)) inside.push_back(x);
  if (inside.size() != phi.ramps.size())
    throw std::invalid_argument("claim: one ramp per sequence point required");
  for (std::size_t i = 0; i < phi.ramps.size(); ++i) {
    const double center = 0.5 * (phi.ramps[i].left + phi.ramps[i].right);
    if (std::fabs(center - inside[i]) > 1e-9 * std::max(1.0, std::fabs(inside[i])))
      throw std::invalid_argument("claim: ramps must be centered at the sequence points");
  }

  ClaimCheck check;
  check.lhs = dirichlet_norm(phi);

  const double s_len = support.length();
  const double energy = inside.size() > 1 ? pair_energy(inside) : 0.0;
  double ramp_logs = 0.0;
  for (const auto& r : phi.ramps) ramp_logs += std::log(r.length());
  check.rhs = (slope_offset * slope_offset * s_len * s_len * std::log(s_len) - energy) / kPi -
              ramp_logs;
  check.residual_over_s2 = (check.lhs - check.rhs) / (s_len * s_len);
  return check;
}

}  // namespace expotype
