#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "expotype/dirichlet.hpp"
#include "expotype/interval.hpp"
#include "expotype/uniform.hpp"

using namespace expotype;

namespace {

constexpr double kPi = 3.14159265358979323846;

double composite_simpson(const std::function<double(double)>& f, double a, double b,
                         int panels) {
  const double h = (b - a) / (2.0 * panels);
  double acc = f(a) + f(b);
  for (int k = 1; k < 2 * panels; ++k) acc += (k % 2 ? 4.0 : 2.0) * f(a + k * h);
  return acc * h / 3.0;
}

double g_antideriv(double u) { return u == 0.0 ? 0.0 : u * std::log(std::fabs(u)) - u; }

// Exact inner integral of log|t - x| for t in [c, d].
double inner_log_integral(double c, double d, double x) {
  return g_antideriv(d - x) - g_antideriv(c - x);
}

// Quadrature-based energy: inner integral exact, outer composite Simpson.
double dirichlet_norm_oracle(const PiecewiseLinearProfile& phi, int panels) {
  double acc = 0.0;
  for (const auto& si : phi.segments) {
    if (si.slope == 0.0) continue;
    auto f = [&](double x) {
      double inner = 0.0;
      for (const auto& sj : phi.segments)
        if (sj.slope != 0.0)
          inner += sj.slope * inner_log_integral(sj.span.left, sj.span.right, x);
      return si.slope * inner;
    };
    acc += composite_simpson(f, si.span.left, si.span.right, panels);
  }
  return -acc / kPi;
}

// Ramps of halfwidth 1/4 around 1..n on (1/4, n + 1/4], unit drift.
struct RegularConfig {
  Interval support;
  std::vector<Interval> ramps;
  SequenceSet lambda;
};

RegularConfig regular_config(int n) {
  RegularConfig cfg;
  cfg.support = closed(0.25, static_cast<double>(n) + 0.25);
  for (int m = 1; m <= n; ++m) {
    cfg.ramps.push_back(closed(m - 0.25, m + 0.25));
    cfg.lambda.points.push_back(static_cast<double>(m));
  }
  return cfg;
}

}  // namespace

TEST_CASE("log kernel rectangle integral: frozen and scaled values") {
  const Interval unit = closed(0.0, 1.0);
  CHECK(log_rectangle_integral(unit, unit) == -1.5);

  // Touching squares: H(2) - 2 H(1) with H(u) = u^2 log|u| / 2 - 3 u^2 / 4.
  CHECK(log_rectangle_integral(unit, closed(1.0, 2.0)) ==
        doctest::Approx(2.0 * std::log(2.0) - 1.5).epsilon(1e-14));

  // Self-similarity: the [0,s]^2 integral is s^2 (log s - 3/2).
  for (double s : {0.5, 3.0, 20.0}) {
    const Interval box = closed(0.0, s);
    CHECK(log_rectangle_integral(box, box) ==
          doctest::Approx(s * s * (std::log(s) - 1.5)).epsilon(1e-13));
  }
}

TEST_CASE("log kernel rectangle integral matches quadrature away from the diagonal") {
  const Interval a = closed(0.0, 1.0);
  const Interval b = closed(3.0, 5.0);
  auto f = [&](double x) { return inner_log_integral(b.left, b.right, x); };
  const double quad = composite_simpson(f, a.left, a.right, 256);
  CHECK(log_rectangle_integral(a, b) == doctest::Approx(quad).epsilon(1e-10));
  CHECK(log_rectangle_integral(a, b) == doctest::Approx(log_rectangle_integral(b, a)));

  const Interval c = closed(-2.0, -0.5);
  auto g = [&](double x) { return inner_log_integral(c.left, c.right, x); };
  const double quad2 = composite_simpson(g, a.left, a.right, 256);
  CHECK(log_rectangle_integral(a, c) == doctest::Approx(quad2).epsilon(1e-10));
}

TEST_CASE("profile construction lays alternating drift and ramp segments") {
  const RegularConfig cfg = regular_config(4);
  const PiecewiseLinearProfile phi = build_profile(cfg.support, cfg.ramps, 1.0);
  REQUIRE(phi.segments.size() == 8);
  for (std::size_t i = 0; i < phi.segments.size(); ++i) {
    if (i % 2 == 0)
      CHECK(phi.segments[i].slope == -1.0);  // drift between ramps
    else
      CHECK(phi.segments[i].slope == 1.0);  // 1/(1/2) - 1
  }
  // The derivative integrates to zero: the bump closes.
  double net = 0.0;
  for (const auto& s : phi.segments) net += s.slope * s.span.length();
  CHECK(net == doctest::Approx(0.0).epsilon(1e-12));
  // Segments tile the support.
  CHECK(phi.segments.front().span.left == cfg.support.left);
  CHECK(phi.segments.back().span.right == cfg.support.right);
  for (std::size_t i = 1; i < phi.segments.size(); ++i)
    CHECK(phi.segments[i].span.left == phi.segments[i - 1].span.right);
}

TEST_CASE("profile validation errors") {
  const Interval support = closed(0.0, 10.0);
  CHECK_THROWS_WITH_AS(build_profile(support, {closed(1.0, 1.0)}, 0.1),
                       "profile: zero-length ramp", std::invalid_argument);
  CHECK_THROWS_WITH_AS(build_profile(support, {closed(9.5, 10.5)}, 0.1),
                       "profile: ramp outside the support", std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      build_profile(support, {closed(1.0, 2.0), closed(1.5, 2.5)}, 0.2),
      "profile: overlapping ramps", std::invalid_argument);
  CHECK_THROWS_WITH_AS(build_profile(support, {closed(1.0, 2.0)}, 0.3),
                       "profile: rise imbalance", std::invalid_argument);
}

TEST_CASE("dirichlet norm is positive and matches the quadrature oracle") {
  SUBCASE("regular bump train") {
    const RegularConfig cfg = regular_config(4);
    const PiecewiseLinearProfile phi = build_profile(cfg.support, cfg.ramps, 1.0);
    const double norm = dirichlet_norm(phi);
    CHECK(norm > 0.0);
    CHECK(norm == doctest::Approx(dirichlet_norm_oracle(phi, 2048)).epsilon(1e-6));
  }
  SUBCASE("irregular ramps") {
    const Interval support = closed(0.0, 10.0);
    const std::vector<Interval> ramps = {closed(0.5, 1.0), closed(2.0, 2.2),
                                         closed(6.9, 7.4)};
    const PiecewiseLinearProfile phi = build_profile(support, ramps, 0.3);
    const double norm = dirichlet_norm(phi);
    CHECK(norm > 0.0);
    CHECK(norm == doctest::Approx(dirichlet_norm_oracle(phi, 2048)).epsilon(1e-6));
  }
}

TEST_CASE("claim residual wires the norm against the energy prediction") {
  const RegularConfig cfg = regular_config(25);
  const ClaimCheck check = claim_residual(cfg.lambda, cfg.ramps, 1.0, cfg.support);

  const PiecewiseLinearProfile phi = build_profile(cfg.support, cfg.ramps, 1.0);
  CHECK(check.lhs == dirichlet_norm(phi));

  const double s_len = cfg.support.length();
  double ramp_logs = 0.0;
  for (const auto& r : cfg.ramps) ramp_logs += std::log(r.length());
  const double rhs =
      (s_len * s_len * std::log(s_len) - pair_energy(cfg.lambda)) / kPi - ramp_logs;
  CHECK(check.rhs == doctest::Approx(rhs).epsilon(1e-12));
  CHECK(check.residual_over_s2 ==
        doctest::Approx((check.lhs - check.rhs) / (s_len * s_len)).epsilon(1e-12));
  CHECK(std::isfinite(check.residual_over_s2));
  CHECK(std::fabs(check.residual_over_s2) < 1.0);
}

TEST_CASE("claim residual validation errors") {
  const RegularConfig cfg = regular_config(3);
  SequenceSet extra = cfg.lambda;
  extra.points.push_back(3.2);
  CHECK_THROWS_WITH_AS(claim_residual(extra, cfg.ramps, 1.0, cfg.support),
                       "claim: one ramp per sequence point required",
                       std::invalid_argument);

  std::vector<Interval> shifted = cfg.ramps;
  shifted[1] = closed(1.85, 2.35);
  CHECK_THROWS_WITH_AS(claim_residual(cfg.lambda, shifted, 1.0, cfg.support),
                       "claim: ramps must be centered at the sequence points",
                       std::invalid_argument);
}
