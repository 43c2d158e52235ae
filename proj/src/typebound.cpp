#include "expotype/typebound.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace expotype {

namespace {

const char* kTrendCaveat =
    "series verdicts are finite-window trend diagnostics, not proofs";

// Two-sided outward ordering anchored at the entry nearest the origin.
struct Anchored {
  std::vector<std::int64_t> order;  // outward index values n
  std::int64_t anchor = 0;          // position i = n + anchor
};

Anchored anchor_outward(const std::vector<double>& centers) {
  Anchored a;
  if (centers.empty()) return a;
  std::size_t k0 = 0;
  for (std::size_t i = 1; i < centers.size(); ++i)
    if (std::fabs(centers[i]) < std::fabs(centers[k0])) k0 = i;
  a.anchor = static_cast<std::int64_t>(k0);
  a.order = outward_index_order(-a.anchor,
                                static_cast<std::int64_t>(centers.size()) - 1 - a.anchor);
  return a;
}

std::string format_level(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, v);
  return buf;
}

Measure scale_mass(const Measure& m, double factor) {
  Measure out = m;
  for (auto& a : out.atoms) a.mass *= factor;
  for (auto& p : out.pieces) p.height *= factor;
  return out;
}

}  // namespace

SeriesDiagnostics star_mass_series(const Measure& m, const SequenceSet& lambda,
                                   const Tolerances& tol) {
  m.validate();
  const StarSystem sys = star_intervals(lambda, StarBoundary::one_sided);

  std::vector<double> centers;
  centers.reserve(sys.stars.size());
  for (const auto& s : sys.stars) centers.push_back(s.center);
  Anchored idx = anchor_outward(centers);

  std::vector<double> terms;
  terms.reserve(idx.order.size());
  for (std::int64_t n : idx.order) {
    const auto i = static_cast<std::size_t>(n + idx.anchor);
    const double mu = mass(m, sys.stars[i].interval);
    const double nn = static_cast<double>(n);
    terms.push_back(std::log(mu) / (1.0 + nn * nn));
  }
  return finalize_series(std::move(idx.order), std::move(terms), tol);
}

TypeEstimate type_lower_bound(const Measure& m, const SequenceSet& lambda,
                              const Partition& p, double d, const Tolerances& tol) {
  m.validate();
  lambda.validate();
  TypeEstimate est;
  est.window = m.window;
  est.caveats.push_back(kTrendCaveat);
  if (lambda.points.size() < 2) {
    est.caveats.push_back("sequence has fewer than two points; bound 0");
    return est;
  }

  est.certificate = certify_uniform(lambda, p, d, tol);
  est.star_mass_diag = star_mass_series(m, lambda, tol);

  const bool cert_ok = est.certificate.verdict == CertVerdict::pass;
  const bool star_ok = est.star_mass_diag.verdict == Verdict::convergent;
  if (cert_ok && star_ok) {
    est.lower_bound = kTwoPi * d;
  } else {
    if (!cert_ok)
      est.caveats.push_back(std::string("certificate verdict: ") +
                            to_string(est.certificate.verdict));
    if (!star_ok)
      est.caveats.push_back(std::string("star-mass series verdict: ") +
                            to_string(est.star_mass_diag.verdict));
  }
  return est;
}

SequenceSet select_candidate(const Measure& m, double d, const SearchParams& params) {
  m.validate();
  if (!(d > 0.0))
    throw std::invalid_argument("select_candidate: d must be positive");

  struct Site {
    double x;
    double mass;
  };
  std::vector<Site> pool;
  if (m.kind == MeasureKind::atomic) {
    for (const auto& a : m.atoms) pool.push_back(Site{a.position, a.mass});
  } else {
    const double cell = 0.25 / d;
    for (const auto& p : m.pieces) {
      const double len = p.support.length();
      if (!(p.height > 0.0) || !(len > 0.0)) continue;
      const auto k = static_cast<std::size_t>(std::max(1.0, std::ceil(len / cell)));
      const double sub = len / static_cast<double>(k);
      for (std::size_t j = 0; j < k; ++j)
        pool.push_back(Site{p.support.left + (static_cast<double>(j) + 0.5) * sub,
                            p.height * sub});
    }
  }

  SequenceSet out;
  if (pool.empty()) return out;

  const Partition part = power_partition(
      closed(std::min(m.window.left, 0.0), std::max(m.window.right, 0.0)),
      params.partition_exponent);

  double carry = 0.0;
  std::size_t pos = 0;
  for (std::int64_t n = part.n_min(); n <= part.n_max(); ++n) {
    const Interval cut = part.interval(n);
    const std::size_t start = pos;
    while (pos < pool.size() && cut.contains(pool[pos].x)) ++pos;
    const std::size_t avail = pos - start;

    const double want = d * cut.length() + carry;
    auto quota = static_cast<std::size_t>(std::max<long long>(0, std::llround(want)));
    quota = std::min(quota, avail);
    carry = std::min(1.0, std::max(-1.0, want - static_cast<double>(quota)));
    if (quota == 0) continue;

    // Greedy pick: the heaviest site first, then whatever maximizes the
    // spacing to the already chosen ones; mass and leftmost position break
    // ties, in that order.
    std::vector<std::size_t> chosen;
    std::vector<bool> used(avail, false);
    for (std::size_t round = 0; round < quota; ++round) {
      std::size_t best = avail;
      double best_gap = -1.0, best_mass = -1.0;
      for (std::size_t j = 0; j < avail; ++j) {
        if (used[j]) continue;
        double gap = std::numeric_limits<double>::infinity();
        for (std::size_t c : chosen)
          gap = std::min(gap, std::fabs(pool[start + j].x - pool[start + c].x));
        const double ms = pool[start + j].mass;
        const bool better =
            gap > best_gap || (gap == best_gap && ms > best_mass) ||
            (gap == best_gap && ms == best_mass &&
             (best == avail || pool[start + j].x < pool[start + best].x));
        if (better) {
          best = j;
          best_gap = gap;
          best_mass = ms;
        }
      }
      if (best == avail) break;
      used[best] = true;
      chosen.push_back(best);
    }
    std::vector<double> xs;
    xs.reserve(chosen.size());
    for (std::size_t c : chosen) xs.push_back(pool[start + c].x);
    std::sort(xs.begin(), xs.end());
    out.points.insert(out.points.end(), xs.begin(), xs.end());
  }
  out.validate();
  return out;
}

TypeEstimate search_max_uniform(const Measure& m, const std::vector<double>& d_grid,
                                const SearchParams& params) {
  m.validate();
  if (d_grid.empty())
    throw std::invalid_argument("search_max_uniform: empty density grid");
  for (std::size_t i = 1; i < d_grid.size(); ++i)
    if (!(d_grid[i - 1] < d_grid[i]))
      throw std::invalid_argument("search_max_uniform: density grid must be ascending");

  TypeEstimate best;
  best.window = m.window;
  best.caveats.push_back(kTrendCaveat);
  bool have_best = false;
  std::vector<std::string> attempts;
  for (double d : d_grid) {
    const SequenceSet cand = select_candidate(m, d, params);
    if (cand.points.size() < 2) {
      attempts.push_back(format_level("d=%.6g: too few sites", d));
      continue;
    }
    const Partition part = adapted_partition(cand.points, params.partition_exponent);
    TypeEstimate est = type_lower_bound(m, cand, part, d, params.tol);
    attempts.push_back(format_level("d=%.6g: ", d) +
                       to_string(est.certificate.verdict) +
                       (est.lower_bound > 0.0 ? "" : " (no bound)"));
    if (est.lower_bound > 0.0) {
      best = std::move(est);
      have_best = true;
    }
  }
  best.caveats.insert(best.caveats.end(), attempts.begin(), attempts.end());
  if (!have_best) {
    best.caveats.push_back("no density level passed; bound 0");
  } else if (best.certificate.d == d_grid.back()) {
    best.caveats.push_back(
        "certified density reached the top of the search grid; type possibly infinite");
  }
  return best;
}

DoublingTransform frostman_doubling_transform(const Measure& m, const TypeEstimate& est,
                                              double alpha, double C,
                                              const SearchParams& params) {
  m.validate();
  if (!(est.lower_bound > 0.0))
    throw std::invalid_argument("frostman transform: seed estimate did not pass");
  if (!(alpha > 0.0) || alpha > 1.0)
    throw std::invalid_argument("frostman transform: alpha must be in (0, 1]");
  if (!(C > 0.0))
    throw std::invalid_argument("frostman transform: C must be positive");

  const Measure normalized = scale_mass(m, 1.0 / C);
  const SequenceSet& lambda = est.certificate.lambda;
  const StarSystem sys = star_intervals(lambda, StarBoundary::one_sided);

  std::vector<double> centers;
  for (const auto& s : sys.stars) centers.push_back(s.center);
  const Anchored idx = anchor_outward(centers);

  DoublingTransform out;
  out.ok = true;
  out.stars.resize(sys.stars.size());
  for (std::size_t i = 0; i < sys.stars.size(); ++i) {
    const Interval star = sys.stars[i].interval;
    StarDoublingReport rep;
    rep.n = static_cast<std::int64_t>(i) - idx.anchor;
    rep.star_mass = mass(normalized, star);
    const double L = star.length();

    if (!(rep.star_mass > 0.0)) {
      rep.flag = "massless star";
    } else {
      const double target = std::pow(rep.star_mass / 6.0, 1.0 / alpha);
      const double m_real = std::ceil(L / target);
      if (!(m_real >= 6.0)) {
        rep.flag = "needs at least 6 parts";
      } else if (m_real > 1e6) {
        rep.flag = "too many parts";
      } else {
        const auto parts = static_cast<std::size_t>(m_real);
        rep.parts = parts;
        rep.part_length = L / static_cast<double>(parts);
        const double need = rep.star_mass / (2.0 * static_cast<double>(parts));
        std::vector<std::size_t> qualifying;
        for (std::size_t j = 0; j < parts; ++j) {
          const double a = star.left + static_cast<double>(j) * rep.part_length;
          const double b = j + 1 == parts ? star.right : a + rep.part_length;
          const Interval part = j + 1 == parts ? closed(a, b) : right_open(a, b);
          if (mass(normalized, part) >= need) qualifying.push_back(j);
        }
        rep.qualifying = qualifying.size();
        if (qualifying.size() < 3) {
          rep.flag = "fewer than 3 qualifying parts";
        } else {
          const double c1 =
              star.left + (static_cast<double>(qualifying.front()) + 0.5) * rep.part_length;
          const double c2 =
              star.left + (static_cast<double>(qualifying.back()) + 0.5) * rep.part_length;
          rep.separation = c2 - c1;
          rep.ok = true;
          out.gamma.points.push_back(c1);
          out.gamma.points.push_back(c2);
        }
      }
    }
    if (!rep.ok) out.ok = false;
    out.stars[i] = rep;
  }

  // Separation series over the stars that produced a pair, outward order.
  std::vector<std::int64_t> sep_index;
  std::vector<double> sep_terms;
  for (std::int64_t n : idx.order) {
    const auto i = static_cast<std::size_t>(n + idx.anchor);
    if (!out.stars[i].ok) continue;
    const double nn = static_cast<double>(n);
    sep_index.push_back(n);
    sep_terms.push_back(std::log(out.stars[i].separation) / (1.0 + nn * nn));
  }
  out.separation_diag =
      finalize_series(std::move(sep_index), std::move(sep_terms),
                      est.certificate.tolerances);

  out.gamma.validate();
  if (out.ok && out.gamma.points.size() >= 2) {
    const Partition part =
        adapted_partition(out.gamma.points, params.partition_exponent);
    out.est2 = type_lower_bound(m, out.gamma, part, 2.0 * est.certificate.d,
                                est.certificate.tolerances);
  } else {
    out.est2.window = m.window;
    out.est2.caveats.push_back("doubling transform incomplete: flagged stars");
  }
  return out;
}

SplitResult split_measure(const Measure& m, const TypeEstimate& est, double c1,
                          double c2, const Tolerances& tol) {
  m.validate();
  const double d = est.certificate.d;
  if (c1 < 0.0 || c2 < 0.0 || std::fabs(c1 + c2 - d) > 1e-9 * std::max(1.0, d))
    throw std::invalid_argument("split: c1 + c2 must equal the certified density");
  const SequenceSet& lambda = est.certificate.lambda;
  if (lambda.points.size() < 2)
    throw std::invalid_argument("split: estimate carries no usable sequence");

  const Partition& part = est.certificate.partition;
  const StarSystem sys = star_intervals(lambda, StarBoundary::one_sided);

  // Evenly spread quota of ceil(c1 |I_n|) sequence members per interval.
  std::vector<bool> picked(lambda.points.size(), false);
  std::size_t pos = 0;
  for (std::int64_t n = part.n_min(); n <= part.n_max(); ++n) {
    const Interval cut = part.interval(n);
    const std::size_t start = pos;
    while (pos < lambda.points.size() && cut.contains(lambda.points[pos])) ++pos;
    const std::size_t cnt = pos - start;
    if (cnt == 0 || c1 == 0.0) continue;
    const auto quota =
        std::min(cnt, static_cast<std::size_t>(std::ceil(c1 * cut.length() - 1e-12)));
    if (quota == 0) continue;
    if (quota == 1) {
      picked[start + cnt / 2] = true;
    } else {
      const double step = static_cast<double>(cnt - 1) / static_cast<double>(quota - 1);
      for (std::size_t j = 0; j < quota; ++j)
        picked[start + static_cast<std::size_t>(
                           std::llround(static_cast<double>(j) * step))] = true;
    }
  }

  SplitResult res;
  std::vector<Interval> cut_set;
  for (std::size_t i = 0; i < lambda.points.size(); ++i) {
    if (picked[i]) {
      res.gamma.points.push_back(lambda.points[i]);
      cut_set.push_back(sys.stars[i].interval);
    }
  }
  res.m1 = restrict(m, cut_set);
  res.m2 = restrict_complement(m, cut_set);

  for (std::size_t i = 0; i < lambda.points.size(); ++i) {
    if (picked[i]) continue;
    const Interval star = sys.stars[i].interval;
    const double mid = sys.stars[i].center;
    const double lm = mass(res.m2, closed(star.left, mid));
    const double rm = mass(res.m2, closed(mid, star.right));
    const double r = 0.5 * (star.right - star.left);
    res.psi.points.push_back(rm > lm ? mid + 0.5 * r : mid - 0.5 * r);
  }

  auto bound_for = [&](const Measure& mm, const SequenceSet& seq, double level) {
    TypeEstimate e;
    e.window = mm.window;
    e.caveats.push_back(kTrendCaveat);
    if (!(level > 0.0) || seq.points.size() < 2) {
      e.caveats.push_back("empty split level; bound 0");
      return e;
    }
    const Partition fresh = adapted_partition(seq.points, kDefaultPartitionExponent);
    return type_lower_bound(mm, seq, fresh, level, tol);
  };
  res.est1 = bound_for(res.m1, res.gamma, c1);
  res.est2 = bound_for(res.m2, res.psi, c2);
  return res;
}

SeriesDiagnostics growth_log_integral(const Measure& m, const Tolerances& tol) {
  m.validate();
  if (m.kind != MeasureKind::density)
    throw std::invalid_argument("growth_log_integral: requires a density measure");

  // The running sup M(x) of the density over [-x, x] is a step function in
  // x; the integrand is integrated exactly between its jumps.
  std::vector<std::pair<double, double>> events;  // (radius where a piece enters, height)
  for (const auto& p : m.pieces) {
    if (!(p.height > 0.0) || !(p.support.length() > 0.0)) continue;
    double enter = 0.0;
    if (p.support.left > 0.0 || p.support.right < 0.0)
      enter = std::min(std::fabs(p.support.left), std::fabs(p.support.right));
    events.emplace_back(enter, p.height);
  }
  std::sort(events.begin(), events.end());

  auto value_on = [&](double w) {
    double acc = 0.0;
    double cur = 0.0;  // M before the first event
    double x = 0.0;
    for (const auto& ev : events) {
      if (ev.first >= w) break;
      if (ev.second > cur) {
        if (ev.first > x) {
          acc += std::log1p(cur) * (std::atan(ev.first) - std::atan(x));
          x = ev.first;
        }
        cur = ev.second;
      }
    }
    acc += std::log1p(cur) * (std::atan(w) - std::atan(x));
    return acc;
  };

  const double W =
      std::max(1e-12, std::max(std::fabs(m.window.left), std::fabs(m.window.right)));
  std::vector<std::int64_t> index;
  std::vector<double> terms;
  double prev = 0.0;
  for (std::size_t j = 0; j < kProfileWindows; ++j) {
    const double w = W * std::ldexp(1.0, -static_cast<int>(kProfileWindows - 1 - j));
    const double v = value_on(w);
    index.push_back(static_cast<std::int64_t>(j));
    terms.push_back(v - prev);
    prev = v;
  }
  return finalize_series(std::move(index), std::move(terms), tol);
}

void WeightFn::validate() const {
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!(samples[i].second >= 1.0))
      throw std::invalid_argument("weight: W must be >= 1 at every sample");
    if (i > 0 && !(samples[i - 1].first < samples[i].first))
      throw std::invalid_argument("weight: sample points must be strictly increasing");
  }
}

double WeightFn::at(double x) const {
  auto it = std::upper_bound(samples.begin(), samples.end(), x,
                             [](double v, const std::pair<double, double>& s) {
                               return v < s.first;
                             });
  if (it == samples.begin()) return 1.0;
  return (it - 1)->second;
}

WeightReport weight_diagnostics(const Measure& m, const WeightFn& w,
                                const SequenceSet& lambda, const Tolerances& tol) {
  m.validate();
  w.validate();
  lambda.validate();

  auto integral_on = [&](double half) {
    double acc = 0.0;
    if (m.kind == MeasureKind::atomic) {
      for (const auto& a : m.atoms)
        if (std::fabs(a.position) <= half) acc += w.at(a.position) * a.mass;
      return acc;
    }
    for (const auto& p : m.pieces) {
      double lo = std::max(p.support.left, -half);
      const double hi = std::min(p.support.right, half);
      while (lo < hi) {
        // Next weight breakpoint after lo bounds the constant segment.
        auto it = std::upper_bound(w.samples.begin(), w.samples.end(), lo,
                                   [](double v, const std::pair<double, double>& s) {
                                     return v < s.first;
                                   });
        const double seg_end = it == w.samples.end() ? hi : std::min(hi, it->first);
        const double wl = w.at(lo);
        if (p.height > 0.0 && seg_end > lo) acc += wl * p.height * (seg_end - lo);
        if (!(seg_end > lo)) break;
        lo = seg_end;
      }
    }
    return acc;
  };

  WeightReport rep;
  const double W =
      std::max(1e-12, std::max(std::fabs(m.window.left), std::fabs(m.window.right)));
  // Dyadic sub-windows growing out of [-1, 1]; the verdict reads the trend of
  // the increments near the window edge, where a finite integral has settled.
  std::vector<std::int64_t> index;
  std::vector<double> terms;
  double prev = 0.0;
  double half = 1.0;
  for (std::int64_t j = 0;; ++j) {
    half = std::min(half, W);
    const double v = integral_on(half);
    index.push_back(j);
    terms.push_back(v - prev);
    prev = v;
    if (half >= W) break;
    half *= 2.0;
  }
  rep.mu_weight = finalize_series(std::move(index), std::move(terms), tol);

  Anchored idx = anchor_outward(lambda.points);
  std::vector<double> log_terms;
  log_terms.reserve(idx.order.size());
  for (std::int64_t n : idx.order) {
    const double x = lambda.points[static_cast<std::size_t>(n + idx.anchor)];
    log_terms.push_back(std::log(w.at(x)) / (1.0 + x * x));
  }
  rep.log_series = finalize_series(std::move(idx.order), std::move(log_terms), tol);
  return rep;
}

WeightFn adversarial_weight(const Measure& m, const WeightFn& base,
                            const SequenceSet& lambda) {
  m.validate();
  base.validate();
  const StarSystem sys = star_intervals(lambda, StarBoundary::one_sided);
  std::vector<double> centers;
  for (const auto& s : sys.stars) centers.push_back(s.center);
  const Anchored idx = anchor_outward(centers);

  WeightFn out;
  for (std::size_t i = 0; i < sys.stars.size(); ++i) {
    const auto n = static_cast<double>(static_cast<std::int64_t>(i) - idx.anchor);
    const double mu = mass(m, sys.stars[i].interval);
    const double inv = mu > 0.0 ? 1.0 / mu : std::numeric_limits<double>::infinity();
    const double v =
        std::max(1.0, std::max(base.at(sys.stars[i].center), inv) / (1.0 + n * n));
    out.samples.emplace_back(sys.stars[i].interval.left, v);
    out.samples.emplace_back(sys.stars[i].interval.right, 1.0);
  }
  out.validate();
  return out;
}

}  // namespace expotype
