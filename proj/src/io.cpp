#include "expotype/io.hpp"

#include "expotype/version.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace expotype::io {

namespace {

const json& need(const json& j, const char* field, const char* who) {
  auto it = j.find(field);
  if (it == j.end())
    throw std::invalid_argument(std::string(who) + ": missing field '" + field + "'");
  return *it;
}

json round_all(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(round_sig(x));
  return a;
}

std::vector<double> doubles_from(const json& j, const char* field, const char* who) {
  const json& arr = need(j, field, who);
  if (!arr.is_array())
    throw std::invalid_argument(std::string(who) + ": field '" + field +
                                "' must be an array");
  std::vector<double> out;
  out.reserve(arr.size());
  for (const auto& x : arr) out.push_back(x.get<double>());
  return out;
}

Verdict verdict_from(const std::string& s, const char* who) {
  if (s == "convergent") return Verdict::convergent;
  if (s == "divergent") return Verdict::divergent;
  if (s == "inconclusive") return Verdict::inconclusive;
  throw std::invalid_argument(std::string(who) + ": unknown verdict '" + s + "'");
}

CertVerdict cert_verdict_from(const std::string& s, const char* who) {
  if (s == "pass") return CertVerdict::pass;
  if (s == "fail") return CertVerdict::fail;
  if (s == "inconclusive") return CertVerdict::inconclusive;
  throw std::invalid_argument(std::string(who) + ": unknown verdict '" + s + "'");
}

}  // namespace

double round_sig(double v) {
  if (!std::isfinite(v)) return v;
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return std::strtod(buf, nullptr);
}

json to_json(const Interval& i) {
  return json{{"left", i.left},
              {"right", i.right},
              {"closed_left", i.closed_left},
              {"closed_right", i.closed_right}};
}

Interval interval_from_json(const json& j) {
  Interval i;
  i.left = need(j, "left", "interval").get<double>();
  i.right = need(j, "right", "interval").get<double>();
  i.closed_left = j.value("closed_left", true);
  i.closed_right = j.value("closed_right", true);
  i.validate("interval");
  return i;
}

json to_json(const Measure& m) {
  json j;
  j["kind"] = m.kind == MeasureKind::atomic ? "atomic" : "density";
  j["window"] = to_json(m.window);
  json atoms = json::array();
  for (const auto& a : m.atoms) atoms.push_back(json{{"x", a.position}, {"mass", a.mass}});
  json pieces = json::array();
  for (const auto& p : m.pieces) {
    json row = to_json(p.support);
    row["height"] = p.height;
    pieces.push_back(std::move(row));
  }
  j["atoms"] = std::move(atoms);
  j["pieces"] = std::move(pieces);
  return j;
}

Measure measure_from_json(const json& j) {
  Measure m;
  const std::string kind = need(j, "kind", "measure").get<std::string>();
  if (kind == "atomic") {
    m.kind = MeasureKind::atomic;
  } else if (kind == "density") {
    m.kind = MeasureKind::density;
  } else {
    throw std::invalid_argument("measure: unknown kind '" + kind + "'");
  }
  m.window = interval_from_json(need(j, "window", "measure"));
  for (const auto& a : need(j, "atoms", "measure"))
    m.atoms.push_back(Atom{need(a, "x", "atom").get<double>(),
                           need(a, "mass", "atom").get<double>()});
  for (const auto& p : need(j, "pieces", "measure")) {
    Piece piece;
    piece.support = interval_from_json(p);
    piece.height = need(p, "height", "piece").get<double>();
    m.pieces.push_back(piece);
  }
  m.validate();
  return m;
}

json to_json(const Partition& p) { return json{{"breakpoints", p.breakpoints}}; }

Partition partition_from_json(const json& j) {
  Partition p;
  p.breakpoints = doubles_from(j, "breakpoints", "partition");
  p.validate();
  return p;
}

json to_json(const SequenceSet& s) { return json{{"points", s.points}}; }

SequenceSet sequence_from_json(const json& j) {
  SequenceSet s;
  s.points = doubles_from(j, "points", "sequence");
  s.validate();
  return s;
}

json to_json(const Tolerances& t) {
  return json{{"tau_conv", t.tau_conv},
              {"tau_div", t.tau_div},
              {"density_tol", t.density_tol}};
}

Tolerances tolerances_from_json(const json& j) {
  Tolerances t;
  t.tau_conv = need(j, "tau_conv", "tolerances").get<double>();
  t.tau_div = need(j, "tau_div", "tolerances").get<double>();
  t.density_tol = need(j, "density_tol", "tolerances").get<double>();
  return t;
}

json to_json(const SeriesDiagnostics& d) {
  json j;
  j["index"] = d.index;
  j["terms"] = round_all(d.terms);
  j["partial_sums"] = round_all(d.partial_sums);
  j["tail_slope"] = round_sig(d.tail_slope);
  j["verdict"] = to_string(d.verdict);
  j["flag"] = d.flag;
  return j;
}

SeriesDiagnostics series_from_json(const json& j) {
  SeriesDiagnostics d;
  for (const auto& n : need(j, "index", "series")) d.index.push_back(n.get<std::int64_t>());
  d.terms = doubles_from(j, "terms", "series");
  d.partial_sums = doubles_from(j, "partial_sums", "series");
  d.tail_slope = need(j, "tail_slope", "series").get<double>();
  d.verdict = verdict_from(need(j, "verdict", "series").get<std::string>(), "series");
  d.flag = j.value("flag", "");
  return d;
}

json to_json(const UniformityCertificate& c) {
  json j;
  j["lambda"] = to_json(c.lambda);
  j["partition"] = to_json(c.partition);
  j["d"] = c.d;
  j["tolerances"] = to_json(c.tolerances);
  j["counts"] = c.counts;
  j["interval_energies"] = round_all(c.interval_energies);
  json rows = json::array();
  for (const auto& r : c.density_report)
    rows.push_back(json{{"n", r.n},
                        {"count", r.count},
                        {"length", round_sig(r.length)},
                        {"deviation", round_sig(r.deviation)}});
  j["density_report"] = std::move(rows);
  j["density_gap"] = round_sig(c.density_gap);
  j["density_ok"] = c.density_ok;
  j["long_interval_terms_nonnegative"] = c.long_interval_terms_nonnegative;
  j["energy_diag"] = to_json(c.energy_diag);
  j["shortness_diag"] = to_json(c.shortness_diag);
  j["verdict"] = to_string(c.verdict);
  j["window"] = to_json(c.window);
  j["flag"] = c.flag;
  return j;
}

UniformityCertificate certificate_from_json(const json& j) {
  UniformityCertificate c;
  c.lambda = sequence_from_json(need(j, "lambda", "certificate"));
  c.partition = partition_from_json(need(j, "partition", "certificate"));
  c.d = need(j, "d", "certificate").get<double>();
  c.tolerances = tolerances_from_json(need(j, "tolerances", "certificate"));
  for (const auto& n : need(j, "counts", "certificate"))
    c.counts.push_back(n.get<std::size_t>());
  c.interval_energies = doubles_from(j, "interval_energies", "certificate");
  for (const auto& r : need(j, "density_report", "certificate")) {
    DensityRow row;
    row.n = need(r, "n", "density row").get<std::int64_t>();
    row.count = need(r, "count", "density row").get<std::size_t>();
    row.length = need(r, "length", "density row").get<double>();
    row.deviation = need(r, "deviation", "density row").get<double>();
    c.density_report.push_back(row);
  }
  c.density_gap = need(j, "density_gap", "certificate").get<double>();
  c.density_ok = need(j, "density_ok", "certificate").get<bool>();
  c.long_interval_terms_nonnegative =
      j.value("long_interval_terms_nonnegative", true);
  c.energy_diag = series_from_json(need(j, "energy_diag", "certificate"));
  c.shortness_diag = series_from_json(need(j, "shortness_diag", "certificate"));
  c.verdict =
      cert_verdict_from(need(j, "verdict", "certificate").get<std::string>(), "certificate");
  c.window = interval_from_json(need(j, "window", "certificate"));
  c.flag = j.value("flag", "");
  return c;
}

json to_json(const TypeEstimate& e) {
  json j;
  j["lower_bound"] = round_sig(e.lower_bound);
  j["certificate"] = to_json(e.certificate);
  j["star_mass_diag"] = to_json(e.star_mass_diag);
  j["window"] = to_json(e.window);
  j["caveats"] = e.caveats;
  return j;
}

TypeEstimate estimate_from_json(const json& j) {
  TypeEstimate e;
  e.lower_bound = need(j, "lower_bound", "estimate").get<double>();
  e.certificate = certificate_from_json(need(j, "certificate", "estimate"));
  e.star_mass_diag = series_from_json(need(j, "star_mass_diag", "estimate"));
  e.window = interval_from_json(need(j, "window", "estimate"));
  for (const auto& c : need(j, "caveats", "estimate"))
    e.caveats.push_back(c.get<std::string>());
  return e;
}

json to_json(const GramScanReport& r) {
  json j;
  j["a_grid"] = r.a_grid;
  j["sigma_mins"] = round_all(r.sigma_mins);
  j["decay_fits"] = round_all(r.decay_fits);
  j["n_nodes"] = r.n_nodes;
  j["kappa"] = r.kappa;
  j["has_transition"] = r.has_transition;
  j["transition_estimate"] = round_sig(r.transition_estimate);
  j["caveat"] = r.caveat;
  return j;
}

GramScanReport gram_from_json(const json& j) {
  GramScanReport r;
  r.a_grid = doubles_from(j, "a_grid", "gram report");
  r.sigma_mins = doubles_from(j, "sigma_mins", "gram report");
  r.decay_fits = doubles_from(j, "decay_fits", "gram report");
  r.n_nodes = need(j, "n_nodes", "gram report").get<std::size_t>();
  r.kappa = need(j, "kappa", "gram report").get<double>();
  r.has_transition = need(j, "has_transition", "gram report").get<bool>();
  r.transition_estimate = need(j, "transition_estimate", "gram report").get<double>();
  r.caveat = j.value("caveat", "");
  return r;
}

json to_json(const FrostmanReport& r) {
  json j;
  j["alpha_hat"] = round_sig(r.alpha_hat);
  j["c_hat"] = round_sig(r.c_hat);
  j["mass_slope"] = round_sig(r.mass_slope);
  j["worst"] = json{{"center", r.worst.center},
                    {"scale", r.worst.scale},
                    {"ball_mass", round_sig(r.worst.ball_mass)},
                    {"ratio", round_sig(r.worst.ratio)}};
  json table = json::array();
  for (const auto& s : r.table)
    table.push_back(json{{"center", s.center},
                         {"scale", s.scale},
                         {"ball_mass", round_sig(s.ball_mass)},
                         {"ratio", round_sig(s.ratio)}});
  j["table"] = std::move(table);
  return j;
}

json to_json(const DoublingReport& r) {
  json j;
  j["defined"] = r.defined;
  j["c_hat"] = round_sig(r.c_hat);
  json table = json::array();
  for (const auto& s : r.table)
    table.push_back(json{{"center", s.center},
                         {"radius", s.radius},
                         {"inner_mass", round_sig(s.inner_mass)},
                         {"outer_mass", round_sig(s.outer_mass)},
                         {"ratio", round_sig(s.ratio)}});
  j["table"] = std::move(table);
  return j;
}

json to_json(const DoublingTransform& t) {
  json j;
  j["gamma"] = to_json(t.gamma);
  j["est2"] = to_json(t.est2);
  j["separation_diag"] = to_json(t.separation_diag);
  j["ok"] = t.ok;
  json stars = json::array();
  for (const auto& s : t.stars)
    stars.push_back(json{{"n", s.n},
                         {"star_mass", round_sig(s.star_mass)},
                         {"parts", s.parts},
                         {"qualifying", s.qualifying},
                         {"part_length", round_sig(s.part_length)},
                         {"separation", round_sig(s.separation)},
                         {"ok", s.ok},
                         {"flag", s.flag}});
  j["stars"] = std::move(stars);
  return j;
}

json to_json(const SplitResult& s) {
  json j;
  j["m1"] = to_json(s.m1);
  j["est1"] = to_json(s.est1);
  j["m2"] = to_json(s.m2);
  j["est2"] = to_json(s.est2);
  j["gamma"] = to_json(s.gamma);
  j["psi"] = to_json(s.psi);
  return j;
}

json to_json(const ClaimCheck& c) {
  return json{{"lhs", round_sig(c.lhs)},
              {"rhs", round_sig(c.rhs)},
              {"residual_over_s2", round_sig(c.residual_over_s2)}};
}

json to_json(const WeightReport& w) {
  return json{{"mu_weight", to_json(w.mu_weight)}, {"log_series", to_json(w.log_series)}};
}

json wrap_artifact(json body) {
  body["tool"] = kToolName;
  body["version"] = kToolVersion;
  return body;
}

void write_artifact(const std::string& path, json body) {
  write_text(path, wrap_artifact(std::move(body)).dump(2) + "\n");
}

json read_artifact(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("'" + path + "': " + e.what());
  }
  if (!j.is_object())
    throw std::invalid_argument("'" + path + "': artifact must be a JSON object");
  return j;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write '" + path + "'");
  out << text;
}

namespace {

std::string csv_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

std::string series_csv(const SeriesDiagnostics& d) {
  std::ostringstream out;
  out << "index,term,partial_sum\n";
  for (std::size_t i = 0; i < d.index.size(); ++i)
    out << d.index[i] << ',' << csv_num(d.terms[i]) << ',' << csv_num(d.partial_sums[i])
        << '\n';
  return out.str();
}

std::string gram_csv(const GramScanReport& r) {
  std::ostringstream out;
  out << "a,sigma_min,decay_slope\n";
  for (std::size_t i = 0; i < r.a_grid.size(); ++i)
    out << csv_num(r.a_grid[i]) << ',' << csv_num(r.sigma_mins[i]) << ','
        << csv_num(r.decay_fits[i]) << '\n';
  return out.str();
}

std::string frostman_csv(const FrostmanReport& r) {
  std::ostringstream out;
  out << "center,scale,ball_mass,ratio\n";
  for (const auto& s : r.table)
    out << csv_num(s.center) << ',' << csv_num(s.scale) << ',' << csv_num(s.ball_mass)
        << ',' << csv_num(s.ratio) << '\n';
  return out.str();
}

}  // namespace expotype::io
