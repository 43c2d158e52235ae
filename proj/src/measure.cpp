#include "expotype/measure.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace expotype {

namespace {

double window_halfwidth(const Measure& m) {
  return std::max(std::fabs(m.window.left), std::fabs(m.window.right));
}

// Distance from the origin to the closest point of the piece carrying mass.
double enter_distance(const Interval& s) {
  if (s.left <= 0.0 && s.right >= 0.0) return 0.0;
  return std::min(std::fabs(s.left), std::fabs(s.right));
}

}  // namespace

void Measure::validate() const {
  window.validate("measure.window");
  if (kind == MeasureKind::atomic) {
    if (!pieces.empty())
      throw std::invalid_argument("measure: atomic measure carries pieces");
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      if (!(atoms[i].mass > 0.0))
        throw std::invalid_argument("measure: atom mass must be positive");
      if (i > 0 && !(atoms[i - 1].position < atoms[i].position))
        throw std::invalid_argument("measure: atom positions must be strictly increasing");
      if (atoms[i].position < window.left || atoms[i].position > window.right)
        throw std::invalid_argument("measure: atom outside window");
    }
  } else {
    if (!atoms.empty())
      throw std::invalid_argument("measure: density measure carries atoms");
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      pieces[i].support.validate("measure.piece");
      if (pieces[i].height < 0.0)
        throw std::invalid_argument("measure: piece height must be nonnegative");
      if (i > 0 && pieces[i].support.left < pieces[i - 1].support.right)
        throw std::invalid_argument("measure: pieces must be disjoint and sorted");
      if (pieces[i].support.left < window.left || pieces[i].support.right > window.right)
        throw std::invalid_argument("measure: piece outside window");
    }
  }
}

double Measure::total_mass() const {
  double acc = 0.0;
  if (kind == MeasureKind::atomic) {
    for (const auto& a : atoms) acc += a.mass;
  } else {
    for (const auto& p : pieces) acc += p.height * p.support.length();
  }
  return acc;
}

double mass(const Measure& m, const Interval& i) {
  i.validate("mass.probe");
  double acc = 0.0;
  if (m.kind == MeasureKind::atomic) {
    auto lo = std::lower_bound(m.atoms.begin(), m.atoms.end(), i.left,
                               [](const Atom& a, double v) { return a.position < v; });
    for (auto it = lo; it != m.atoms.end() && it->position <= i.right; ++it)
      if (i.contains(it->position)) acc += it->mass;
  } else {
    auto lo = std::lower_bound(m.pieces.begin(), m.pieces.end(), i.left,
                               [](const Piece& p, double v) { return p.support.right < v; });
    for (auto it = lo; it != m.pieces.end() && it->support.left <= i.right; ++it)
      acc += it->height * overlap_length(it->support, i);
  }
  return acc;
}

double density_at(const Measure& m, double x) {
  if (m.kind != MeasureKind::density)
    throw std::invalid_argument("density_at: requires a density measure");
  auto it = std::lower_bound(m.pieces.begin(), m.pieces.end(), x,
                             [](const Piece& p, double v) { return p.support.right < v; });
  if (it != m.pieces.end() && it->support.contains(x)) return it->height;
  return 0.0;
}

SeriesDiagnostics poisson_functional(const Measure& m, const Tolerances& tol) {
  m.validate();
  const double W = std::max(window_halfwidth(m), 1e-12);

  auto value_on = [&](double w) {
    double acc = 0.0;
    if (m.kind == MeasureKind::atomic) {
      for (const auto& a : m.atoms)
        if (std::fabs(a.position) <= w)
          acc += a.mass / (1.0 + a.position * a.position);
    } else {
      for (const auto& p : m.pieces) {
        const double lo = std::max(p.support.left, -w);
        const double hi = std::min(p.support.right, w);
        if (hi > lo) acc += p.height * (std::atan(hi) - std::atan(lo));
      }
    }
    return acc;
  };

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

FrostmanReport frostman_scan(const Measure& m,
                             const std::vector<double>& scales,
                             const std::vector<double>& centers) {
  m.validate();
  if (scales.empty() || centers.empty())
    throw std::invalid_argument("frostman_scan: scales and centers must be nonempty");
  for (double s : scales)
    if (!(s > 0.0)) throw std::invalid_argument("frostman_scan: scales must be positive");

  std::vector<double> sorted_scales = scales;
  std::sort(sorted_scales.begin(), sorted_scales.end(), std::greater<>());
  sorted_scales.erase(std::unique(sorted_scales.begin(), sorted_scales.end()),
                      sorted_scales.end());

  FrostmanReport rep;
  std::vector<double> log_s, log_max;
  for (double s : sorted_scales) {
    double best = 0.0;
    for (double c : centers) {
      const double bm = mass(m, open(c - s, c + s));
      rep.table.push_back(FrostmanSample{c, s, bm, 0.0});
      best = std::max(best, bm);
    }
    if (best > 0.0) {
      log_s.push_back(std::log(s));
      log_max.push_back(std::log(best));
    }
  }

  if (log_s.size() >= 2) rep.mass_slope = least_squares_slope(log_s, log_max);

  // Fitting allowance absorbs least-squares jitter; grid resolution is 0.01.
  const double allowance = 0.015;
  double alpha = std::floor((rep.mass_slope + allowance) / 0.01) * 0.01;
  alpha = std::min(1.0, std::max(0.01, alpha));
  rep.alpha_hat = alpha;

  for (auto& row : rep.table) {
    row.ratio = row.ball_mass / std::pow(row.scale, rep.alpha_hat);
    if (row.ratio > rep.c_hat) {
      rep.c_hat = row.ratio;
      rep.worst = row;
    }
  }
  return rep;
}

DoublingReport doubling_scan(const Measure& m,
                             const std::vector<double>& centers,
                             const std::vector<double>& radii) {
  m.validate();
  if (radii.empty() || centers.empty())
    throw std::invalid_argument("doubling_scan: centers and radii must be nonempty");
  DoublingReport rep;
  for (double r : radii) {
    if (!(r > 0.0)) throw std::invalid_argument("doubling_scan: radii must be positive");
    for (double c : centers) {
      DoublingSample s;
      s.center = c;
      s.radius = r;
      s.inner_mass = mass(m, open(c - r, c + r));
      s.outer_mass = mass(m, open(c - 2.0 * r, c + 2.0 * r));
      if (s.inner_mass > 0.0) {
        s.ratio = s.outer_mass / s.inner_mass;
        if (!rep.defined || s.ratio > rep.c_hat) rep.c_hat = s.ratio;
        rep.defined = true;
      }
      rep.table.push_back(s);
    }
  }
  return rep;
}

std::vector<std::pair<double, double>> ess_sup_profile(const Measure& m,
                                                       const std::vector<double>& xs) {
  if (m.kind != MeasureKind::density)
    throw std::invalid_argument("ess_sup_profile: requires a density measure");
  m.validate();
  // Sort pieces by the radius at which they start overlapping [-x, x] with
  // positive length, then answer queries off a prefix maximum.
  std::vector<std::pair<double, double>> enters;  // (enter radius, height)
  enters.reserve(m.pieces.size());
  for (const auto& p : m.pieces)
    if (p.height > 0.0 && p.support.length() > 0.0)
      enters.emplace_back(enter_distance(p.support), p.height);
  std::sort(enters.begin(), enters.end());
  std::vector<double> prefix(enters.size());
  double run = 0.0;
  for (std::size_t i = 0; i < enters.size(); ++i) {
    run = std::max(run, enters[i].second);
    prefix[i] = run;
  }

  std::vector<std::pair<double, double>> out;
  out.reserve(xs.size());
  for (double x : xs) {
    if (x < 0.0) throw std::invalid_argument("ess_sup_profile: x must be nonnegative");
    // strictly positive overlap requires enter < x
    auto it = std::lower_bound(enters.begin(), enters.end(), x,
                               [](const std::pair<double, double>& e, double v) {
                                 return e.first < v;
                               });
    const double v = (it == enters.begin()) ? 0.0 : prefix[(it - enters.begin()) - 1];
    out.emplace_back(x, v);
  }
  return out;
}

std::vector<double> default_scan_centers(const Measure& m, std::size_t budget) {
  m.validate();
  if (budget < 4) budget = 4;
  std::set<double> centers;

  auto add_strided = [&](std::size_t count, auto&& get) {
    if (count == 0) return;
    const std::size_t cap = budget / 2;
    const std::size_t stride = (count > cap) ? (count + cap - 1) / cap : 1;
    for (std::size_t i = 0; i < count; i += stride) centers.insert(get(i));
  };

  if (m.kind == MeasureKind::atomic) {
    add_strided(m.atoms.size(), [&](std::size_t i) { return m.atoms[i].position; });
  } else {
    add_strided(m.pieces.size(), [&](std::size_t i) {
      const auto& s = m.pieces[i].support;
      return 0.5 * (s.left + s.right);
    });
  }

  // Window grid thinned to points near mass.
  const double span = m.window.length();
  if (span > 0.0) {
    const std::size_t g = budget / 2;
    const double h = span / (4.0 * static_cast<double>(g));
    for (std::size_t k = 0; k < g; ++k) {
      const double x = m.window.left + (static_cast<double>(k) + 0.5) * span /
                                           static_cast<double>(g);
      if (mass(m, open(x - h, x + h)) > 0.0) centers.insert(x);
    }
  }
  return std::vector<double>(centers.begin(), centers.end());
}

// ---- generators ----------------------------------------------------------

namespace {

Measure finish(Measure m, double R) {
  Interval w = closed(-R, R);
  for (const auto& a : m.atoms) w = hull(w, closed(a.position, a.position));
  for (const auto& p : m.pieces) w = hull(w, closed(p.support.left, p.support.right));
  m.window = w;
  m.validate();
  return m;
}

Measure gen_cells(double lo, double hi, int cells_per_unit, double R,
                  double (*f)(double)) {
  if (cells_per_unit < 1)
    throw std::invalid_argument("generate: cells_per_unit must be >= 1");
  Measure m;
  m.kind = MeasureKind::density;
  const double step = 1.0 / static_cast<double>(cells_per_unit);
  const auto n_cells = static_cast<std::int64_t>(std::ceil((hi - lo) / step));
  for (std::int64_t k = 0; k < n_cells; ++k) {
    const double a = lo + static_cast<double>(k) * step;
    const double b = std::min(hi, a + step);
    if (b <= a) break;
    m.pieces.push_back(Piece{right_open(a, b), f(0.5 * (a + b))});
  }
  return finish(std::move(m), R);
}

double poisson_density(double x) { return 1.0 / (1.0 + x * x); }

Measure gen_comb(double R, bool shifted) {
  Measure m;
  m.kind = MeasureKind::atomic;
  const auto lo = static_cast<std::int64_t>(std::ceil(-R));
  const auto hi = static_cast<std::int64_t>(std::floor(R));
  for (std::int64_t n = lo; n <= hi; ++n) {
    const auto x = static_cast<double>(n);
    m.atoms.push_back(Atom{shifted ? x + std::exp(-std::fabs(x)) : x, 1.0});
  }
  return finish(std::move(m), R);
}

// Narrow piece at x carrying a prescribed mass.  The width keeps a floor of
// ~64 ulps at the position so the right endpoint stays strictly above x in
// binary64; the height is set from the realized endpoint gap, so the piece
// mass equals the request to within one rounding.
Piece spike_piece(double x, double width, double mass) {
  const double w = std::max(width, std::ldexp(std::max(1.0, std::fabs(x)), -46));
  const double right = x + w;
  const double len = right - x;  // exact: right is within a factor 2 of x
  return Piece{right_open(x, right), mass / len};
}

Measure gen_spike(double R) {
  Measure m;
  m.kind = MeasureKind::density;
  const auto lo = static_cast<std::int64_t>(std::ceil(-R));
  const auto hi = static_cast<std::int64_t>(std::floor(R));
  for (std::int64_t n = lo; n <= hi; ++n) {
    const auto x = static_cast<double>(n);
    m.pieces.push_back(spike_piece(x, std::exp(-std::fabs(x)), 1.0 / (1.0 + x * x)));
  }
  return finish(std::move(m), R);
}

Measure gen_sharpness(double R, const std::string& growth) {
  double pow_k = 0.0;
  bool exp_growth = true;
  if (growth == "exp") {
    exp_growth = true;
  } else if (growth.rfind("pow:", 0) == 0) {
    exp_growth = false;
    pow_k = std::stod(growth.substr(4));
    if (!(pow_k > 0.0)) throw std::invalid_argument("generate: pow growth needs k > 0");
  } else {
    throw std::invalid_argument("generate: unknown growth profile '" + growth + "'");
  }
  Measure m;
  m.kind = MeasureKind::density;
  const auto lo = static_cast<std::int64_t>(std::ceil(-R));
  const auto hi = static_cast<std::int64_t>(std::floor(R));
  for (std::int64_t n = lo; n <= hi; ++n) {
    const auto x = static_cast<double>(n);
    const double M = exp_growth ? std::exp(std::fabs(x)) : std::pow(1.0 + std::fabs(x), pow_k);
    m.pieces.push_back(spike_piece(x, 1.0 / M, 1.0));
  }
  return finish(std::move(m), R);
}

Measure gen_dyadic(double R, bool odd) {
  Measure m;
  m.kind = MeasureKind::density;
  // Blocks [2^(2n+o), 2^(2n+1+o)] accumulate at 0; keep a fixed finite dip
  // below scale 1 so the truncation stays a finite piece list.
  const int n_min = -6;
  const int o = odd ? 1 : 0;
  for (int n = n_min;; ++n) {
    const double a = std::ldexp(1.0, 2 * n + o);
    if (a > R) break;
    const double b = std::min(R, std::ldexp(1.0, 2 * n + 1 + o));
    if (b > a) m.pieces.push_back(Piece{closed(a, b), 1.0});
  }
  return finish(std::move(m), R);
}

Measure gen_benedicks(double R) {
  Measure m;
  m.kind = MeasureKind::density;
  std::vector<Piece> pos;
  for (double base = 1.0; base <= R; base *= 4.0) {
    const double c = base + 0.5;
    pos.push_back(Piece{closed(base, base + 1.0), poisson_density(c)});
  }
  for (auto it = pos.rbegin(); it != pos.rend(); ++it) {
    const auto& s = it->support;
    m.pieces.push_back(Piece{closed(-s.right, -s.left), it->height});
  }
  m.pieces.insert(m.pieces.end(), pos.begin(), pos.end());
  return finish(std::move(m), R);
}

Measure gen_cantor(double R, int depth) {
  if (depth < 1 || depth > 20)
    throw std::invalid_argument("generate: cantor depth must be in [1, 20]");
  const auto cells = static_cast<std::size_t>(1) << depth;
  const auto periods_lo = static_cast<std::int64_t>(std::ceil(-R));
  const auto periods_hi = static_cast<std::int64_t>(std::floor(R)) - 1;
  const auto n_periods = periods_hi >= periods_lo
                             ? static_cast<std::size_t>(periods_hi - periods_lo + 1)
                             : 0;
  if (n_periods * cells > (1u << 22))
    throw std::invalid_argument("generate: cantor window too large for this depth");

  // 3^depth is exact in binary64 up to depth 20, so cell endpoints are
  // single correctly rounded divisions and periods tile without overlap.
  const double cells_per_period = std::pow(3.0, depth);
  const double height = std::pow(1.5, depth);
  Measure m;
  m.kind = MeasureKind::density;
  for (std::int64_t p = periods_lo; p <= periods_hi; ++p) {
    for (std::size_t k = 0; k < cells; ++k) {
      // Bits of k, most significant first, pick left/right thirds.
      std::int64_t t = 0;
      for (int b = depth - 1; b >= 0; --b) {
        t *= 3;
        if ((k >> b) & 1u) t += 2;
      }
      const double lo = static_cast<double>(p) + static_cast<double>(t) / cells_per_period;
      const double hi =
          static_cast<double>(p) + static_cast<double>(t + 1) / cells_per_period;
      m.pieces.push_back(Piece{closed(lo, hi), height});
    }
  }
  return finish(std::move(m), R);
}

}  // namespace

std::vector<std::string> generator_names() {
  return {"poisson",      "poisson_halfline", "lebesgue",    "lebesgue_halfline",
          "spike",        "comb",             "shifted_comb", "dyadic_odd",
          "dyadic_even",  "benedicks_blocks", "cantor_periodic", "sharpness"};
}

Measure generate(const std::string& example, const GenerateParams& params) {
  const double R = params.R;
  if (!(R > 0.0)) throw std::invalid_argument("generate: R must be positive");
  if (example == "poisson")
    return gen_cells(-R, R, params.cells_per_unit, R, &poisson_density);
  if (example == "poisson_halfline")
    return gen_cells(0.0, R, params.cells_per_unit, R, &poisson_density);
  if (example == "lebesgue") {
    Measure m;
    m.kind = MeasureKind::density;
    m.pieces.push_back(Piece{closed(-R, R), 1.0});
    return finish(std::move(m), R);
  }
  if (example == "lebesgue_halfline") {
    Measure m;
    m.kind = MeasureKind::density;
    m.pieces.push_back(Piece{closed(0.0, R), 1.0});
    return finish(std::move(m), R);
  }
  if (example == "spike") return gen_spike(R);
  if (example == "comb") return gen_comb(R, false);
  if (example == "shifted_comb") return gen_comb(R, true);
  if (example == "dyadic_odd") return gen_dyadic(R, true);
  if (example == "dyadic_even") return gen_dyadic(R, false);
  if (example == "benedicks_blocks") return gen_benedicks(R);
  if (example == "cantor_periodic") return gen_cantor(R, params.depth);
  if (example == "sharpness") return gen_sharpness(R, params.growth);
  throw std::invalid_argument("generate: unknown example '" + example + "'");
}

// ---- restriction / combination -------------------------------------------

namespace {

void check_parts(const std::vector<Interval>& parts) {
  for (std::size_t i = 0; i < parts.size(); ++i) {
    parts[i].validate("restrict.part");
    if (i > 0 && parts[i].left < parts[i - 1].right)
      throw std::invalid_argument("restrict: parts must be disjoint and sorted");
  }
}

bool in_union(const std::vector<Interval>& parts, double x) {
  auto it = std::lower_bound(parts.begin(), parts.end(), x,
                             [](const Interval& p, double v) { return p.right < v; });
  return it != parts.end() && it->contains(x);
}

}  // namespace

Measure restrict(const Measure& m, const std::vector<Interval>& parts) {
  m.validate();
  check_parts(parts);
  Measure out;
  out.kind = m.kind;
  out.window = m.window;
  if (m.kind == MeasureKind::atomic) {
    for (const auto& a : m.atoms)
      if (in_union(parts, a.position)) out.atoms.push_back(a);
  } else {
    for (const auto& p : m.pieces) {
      for (const auto& cut : parts) {
        const double lo = std::max(p.support.left, cut.left);
        const double hi = std::min(p.support.right, cut.right);
        if (hi > lo) out.pieces.push_back(Piece{closed(lo, hi), p.height});
      }
    }
  }
  out.validate();
  return out;
}

Measure restrict_complement(const Measure& m, const std::vector<Interval>& parts) {
  m.validate();
  check_parts(parts);
  Measure out;
  out.kind = m.kind;
  out.window = m.window;
  if (m.kind == MeasureKind::atomic) {
    for (const auto& a : m.atoms)
      if (!in_union(parts, a.position)) out.atoms.push_back(a);
  } else {
    for (const auto& p : m.pieces) {
      double cursor = p.support.left;
      for (const auto& cut : parts) {
        if (cut.right <= p.support.left || cut.left >= p.support.right) continue;
        const double lo = std::max(cursor, p.support.left);
        const double hi = std::min(cut.left, p.support.right);
        if (hi > lo) out.pieces.push_back(Piece{closed(lo, hi), p.height});
        cursor = std::max(cursor, cut.right);
      }
      if (cursor < p.support.right)
        out.pieces.push_back(Piece{closed(std::max(cursor, p.support.left), p.support.right),
                                   p.height});
    }
  }
  out.validate();
  return out;
}

Measure add(const Measure& a, const Measure& b) {
  a.validate();
  b.validate();
  if (a.kind != b.kind)
    throw std::invalid_argument("add: mixed measure kinds are not supported");
  Measure out;
  out.kind = a.kind;
  out.window = hull(a.window, b.window);
  if (a.kind == MeasureKind::atomic) {
    std::size_t i = 0, j = 0;
    while (i < a.atoms.size() || j < b.atoms.size()) {
      if (j == b.atoms.size() ||
          (i < a.atoms.size() && a.atoms[i].position < b.atoms[j].position)) {
        out.atoms.push_back(a.atoms[i++]);
      } else if (i == a.atoms.size() || b.atoms[j].position < a.atoms[i].position) {
        out.atoms.push_back(b.atoms[j++]);
      } else {
        // Coincident positions merge; binary64 cannot keep them apart.
        out.atoms.push_back(Atom{a.atoms[i].position, a.atoms[i].mass + b.atoms[j].mass});
        ++i;
        ++j;
      }
    }
  } else {
    // Piece lists are merged on the union of their breakpoints.
    std::vector<double> cuts;
    for (const auto& p : a.pieces) { cuts.push_back(p.support.left); cuts.push_back(p.support.right); }
    for (const auto& p : b.pieces) { cuts.push_back(p.support.left); cuts.push_back(p.support.right); }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      const double mid = 0.5 * (cuts[k] + cuts[k + 1]);
      double h = 0.0;
      for (const Measure* src : {&a, &b}) {
        auto it = std::lower_bound(src->pieces.begin(), src->pieces.end(), mid,
                                   [](const Piece& p, double v) { return p.support.right < v; });
        if (it != src->pieces.end() && it->support.left < mid && mid < it->support.right)
          h += it->height;
      }
      if (h > 0.0) out.pieces.push_back(Piece{closed(cuts[k], cuts[k + 1]), h});
    }
  }
  out.validate();
  return out;
}

}  // namespace expotype
