// Command-line front end: measure generation, certification, type bounds,
// constructive transforms, the singular-value scan, and report plumbing.
//
// Exit codes: 0 = completed, 2 = a verdict failed or stayed inconclusive
// (artifacts are still written), 1 = usage or input error.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "expotype/dirichlet.hpp"
#include "expotype/gram.hpp"
#include "expotype/io.hpp"
#include "expotype/measure.hpp"
#include "expotype/typebound.hpp"
#include "expotype/uniform.hpp"
#include "expotype/version.hpp"

namespace {

using namespace expotype;

constexpr double kPi = 3.14159265358979323846;

struct CommonOpts {
  double R = 10.0;
  double partition_p = kDefaultPartitionExponent;
  Tolerances tol;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "json";
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_window) {
  if (with_window) cmd->add_option("--R", o.R, "window half-width");
  cmd->add_option("--partition-p", o.partition_p, "partition breakpoint exponent");
  cmd->add_option("--tol-conv", o.tol.tau_conv, "tail-slope bound for convergence");
  cmd->add_option("--tol-div", o.tol.tau_div, "tail-slope bound for divergence");
  cmd->add_option("--density-tol", o.tol.density_tol, "density deviation tolerance");
  cmd->add_option("--seed", o.seed, "seed recorded with the run");
  cmd->add_option("--out", o.out, "output path")->required();
  cmd->add_option("--format", o.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
}

Measure load_measure(const std::string& path) {
  return io::measure_from_json(io::read_artifact(path));
}

SequenceSet load_sequence(const std::string& path) {
  return io::sequence_from_json(io::read_artifact(path));
}

TypeEstimate load_estimate(const std::string& path) {
  return io::estimate_from_json(io::read_artifact(path));
}

std::vector<double> parse_grid(const std::string& spec) {
  double lo, hi, step;
  if (std::sscanf(spec.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3 || !(step > 0.0))
    throw std::invalid_argument("grid must be lo:hi:step with step > 0");
  std::vector<double> grid;
  for (double v = lo; v <= hi + 1e-12 * step; v += step) grid.push_back(v);
  if (grid.empty()) throw std::invalid_argument("grid is empty");
  return grid;
}

SearchParams search_params(const CommonOpts& o) {
  SearchParams p;
  p.partition_exponent = o.partition_p;
  p.seed = o.seed;
  p.tol = o.tol;
  return p;
}

// Sequence for a measure-level run: atoms verbatim, otherwise the density
// selection at the requested level.
SequenceSet sequence_for(const Measure& m, double d, const SearchParams& params) {
  if (m.kind == MeasureKind::atomic) {
    SequenceSet s;
    for (const auto& a : m.atoms) s.points.push_back(a.position);
    return s;
  }
  return select_candidate(m, d, params);
}

int emit_series(const CommonOpts& o, const SeriesDiagnostics& diag, io::json extra) {
  if (o.format == "csv") {
    io::write_text(o.out, io::series_csv(diag));
  } else {
    extra["diagnostics"] = io::to_json(diag);
    io::write_artifact(o.out, std::move(extra));
  }
  return diag.verdict == Verdict::inconclusive ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"desk-scale exponential-type certificates and diagnostics"};
  app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);
  app.set_config("--config", "", "ini config file; explicit flags win");
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "write a named example measure");
  CommonOpts gen_o;
  std::string gen_example;
  GenerateParams gen_params;
  gen->add_option("--example", gen_example, "one of the named generators")->required();
  gen->add_option("--depth", gen_params.depth, "recursion depth for the periodic fractal");
  gen->add_option("--growth", gen_params.growth, "growth profile: exp or pow:k");
  gen->add_option("--cells-per-unit", gen_params.cells_per_unit,
                  "discretization of smooth densities");
  add_common(gen, gen_o, true);

  // certify
  auto* certify = app.add_subcommand("certify", "uniformity certificate at a level d");
  CommonOpts cert_o;
  std::string cert_in, cert_seq;
  double cert_d = 1.0;
  certify->add_option("--in", cert_in, "measure artifact");
  certify->add_option("--seq", cert_seq, "sequence artifact (overrides --in sites)");
  certify->add_option("--d", cert_d, "density level")->required();
  add_common(certify, cert_o, false);

  // type-bound
  auto* tb = app.add_subcommand("type-bound", "certificate plus star-mass series");
  CommonOpts tb_o;
  std::string tb_in, tb_seq;
  double tb_d = 1.0;
  tb->add_option("--in", tb_in, "measure artifact")->required();
  tb->add_option("--seq", tb_seq, "sequence artifact (defaults to measure sites)");
  tb->add_option("--d", tb_d, "density level")->required();
  add_common(tb, tb_o, false);

  // search
  auto* search = app.add_subcommand("search", "largest passing density on a grid");
  CommonOpts search_o;
  std::string search_in, search_grid = "0.25:2:0.25";
  search->add_option("--in", search_in, "measure artifact")->required();
  search->add_option("--d-grid", search_grid, "density grid lo:hi:step");
  add_common(search, search_o, false);

  // split
  auto* split = app.add_subcommand("split", "split a certified measure into two parts");
  CommonOpts split_o;
  std::string split_in, split_est;
  double split_c1 = 0.5, split_c2 = 0.5;
  split->add_option("--in", split_in, "measure artifact")->required();
  split->add_option("--est", split_est, "passing estimate artifact")->required();
  split->add_option("--c1", split_c1, "first level");
  split->add_option("--c2", split_c2, "second level");
  add_common(split, split_o, false);

  // frostman-double
  auto* fd = app.add_subcommand("frostman-double", "density doubling under a mass bound");
  CommonOpts fd_o;
  std::string fd_in, fd_est;
  double fd_alpha = 1.0, fd_c = 1.0;
  fd->add_option("--in", fd_in, "measure artifact")->required();
  fd->add_option("--est", fd_est, "passing estimate artifact")->required();
  fd->add_option("--alpha", fd_alpha, "mass-scaling exponent");
  fd->add_option("--c", fd_c, "mass-scaling constant");
  add_common(fd, fd_o, false);

  // growth
  auto* growth = app.add_subcommand("growth", "log-growth integral of the density sup");
  CommonOpts growth_o;
  std::string growth_in;
  growth->add_option("--in", growth_in, "measure artifact")->required();
  add_common(growth, growth_o, false);

  // weights
  auto* weights = app.add_subcommand("weights", "weight admissibility diagnostics");
  CommonOpts weights_o;
  std::string weights_in, weights_seq, weights_file;
  bool weights_adversarial = false;
  weights->add_option("--in", weights_in, "measure artifact")->required();
  weights->add_option("--seq", weights_seq, "sequence artifact")->required();
  weights->add_option("--weight", weights_file, "sampled weight artifact");
  weights->add_flag("--adversarial", weights_adversarial,
                    "use the worst-case star weight built from the measure");
  add_common(weights, weights_o, false);

  // gram-scan
  auto* gram = app.add_subcommand("gram-scan", "singular-value completeness scan");
  CommonOpts gram_o;
  std::string gram_in;
  double gram_alo = kPi, gram_ahi = 3.0 * kPi;
  std::size_t gram_count = 33, gram_npp = 8;
  GramConfig gram_cfg;
  gram->add_option("--in", gram_in, "measure artifact")->required();
  gram->add_option("--a-lo", gram_alo, "first bandwidth");
  gram->add_option("--a-hi", gram_ahi, "last bandwidth");
  gram->add_option("--a-count", gram_count, "bandwidth grid size");
  gram->add_option("--nodes-per-piece", gram_npp, "quadrature nodes per density piece");
  gram->add_option("--kappa", gram_cfg.kappa, "frequencies per node per unit bandwidth");
  gram->add_option("--slope-threshold", gram_cfg.slope_threshold,
                   "flat-decay threshold per doubling");
  gram->add_flag("--nested", gram_cfg.nested_freqs, "nested frequency grids");
  add_common(gram, gram_o, false);

  // dirichlet-check
  auto* dirich = app.add_subcommand("dirichlet-check", "profile-norm identity residuals");
  CommonOpts dirich_o;
  std::vector<std::size_t> dirich_ns{25, 50, 100, 200};
  dirich->add_option("--n-list", dirich_ns, "regular-configuration sizes");
  add_common(dirich, dirich_o, false);

  // compare
  auto* compare = app.add_subcommand("compare", "type bound vs singular-value transition");
  CommonOpts compare_o;
  std::string compare_est, compare_gram;
  compare->add_option("--est", compare_est, "estimate artifact")->required();
  compare->add_option("--gram", compare_gram, "scan artifact")->required();
  add_common(compare, compare_o, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (gen->parsed()) {
      gen_params.R = gen_o.R;
      const Measure m = generate(gen_example, gen_params);
      io::write_artifact(gen_o.out, io::to_json(m));
      return 0;
    }

    if (certify->parsed()) {
      SequenceSet lambda;
      if (!cert_seq.empty()) {
        lambda = load_sequence(cert_seq);
      } else if (!cert_in.empty()) {
        lambda = sequence_for(load_measure(cert_in), cert_d, search_params(cert_o));
      } else {
        throw std::invalid_argument("certify: needs --seq or --in");
      }
      const Partition part = adapted_partition(lambda.points, cert_o.partition_p);
      const UniformityCertificate cert =
          certify_uniform(lambda, part, cert_d, cert_o.tol);
      io::write_artifact(cert_o.out, io::to_json(cert));
      std::cout << "verdict: " << to_string(cert.verdict) << "\n";
      return cert.verdict == CertVerdict::pass ? 0 : 2;
    }

    if (tb->parsed()) {
      const Measure m = load_measure(tb_in);
      const SequenceSet lambda = tb_seq.empty()
                                     ? sequence_for(m, tb_d, search_params(tb_o))
                                     : load_sequence(tb_seq);
      const Partition part = adapted_partition(lambda.points, tb_o.partition_p);
      const TypeEstimate est = type_lower_bound(m, lambda, part, tb_d, tb_o.tol);
      io::write_artifact(tb_o.out, io::to_json(est));
      std::cout << "lower_bound: " << io::round_sig(est.lower_bound) << "\n";
      return est.lower_bound > 0.0 ? 0 : 2;
    }

    if (search->parsed()) {
      const Measure m = load_measure(search_in);
      const TypeEstimate est =
          search_max_uniform(m, parse_grid(search_grid), search_params(search_o));
      io::write_artifact(search_o.out, io::to_json(est));
      std::cout << "lower_bound: " << io::round_sig(est.lower_bound) << "\n";
      return est.lower_bound > 0.0 ? 0 : 2;
    }

    if (split->parsed()) {
      const Measure m = load_measure(split_in);
      const SplitResult res =
          split_measure(m, load_estimate(split_est), split_c1, split_c2, split_o.tol);
      io::write_artifact(split_o.out, io::to_json(res));
      const bool ok = (split_c1 == 0.0 || res.est1.lower_bound > 0.0) &&
                      (split_c2 == 0.0 || res.est2.lower_bound > 0.0);
      return ok ? 0 : 2;
    }

    if (fd->parsed()) {
      const Measure m = load_measure(fd_in);
      const DoublingTransform t = frostman_doubling_transform(
          m, load_estimate(fd_est), fd_alpha, fd_c, search_params(fd_o));
      io::write_artifact(fd_o.out, io::to_json(t));
      return t.ok && t.est2.lower_bound > 0.0 ? 0 : 2;
    }

    if (growth->parsed()) {
      const SeriesDiagnostics diag =
          growth_log_integral(load_measure(growth_in), growth_o.tol);
      return emit_series(growth_o, diag, io::json::object());
    }

    if (weights->parsed()) {
      const Measure m = load_measure(weights_in);
      const SequenceSet lambda = load_sequence(weights_seq);
      WeightFn w;
      if (weights_adversarial) {
        WeightFn base;
        if (!weights_file.empty()) {
          const io::json j = io::read_artifact(weights_file);
          for (const auto& s : j.at("samples"))
            base.samples.emplace_back(s.at("x").get<double>(), s.at("W").get<double>());
        }
        w = adversarial_weight(m, base, lambda);
      } else if (!weights_file.empty()) {
        const io::json j = io::read_artifact(weights_file);
        for (const auto& s : j.at("samples"))
          w.samples.emplace_back(s.at("x").get<double>(), s.at("W").get<double>());
        w.validate();
      } else {
        throw std::invalid_argument("weights: needs --weight or --adversarial");
      }
      const WeightReport rep = weight_diagnostics(m, w, lambda, weights_o.tol);
      io::json body = io::to_json(rep);
      io::json samples = io::json::array();
      for (const auto& s : w.samples)
        samples.push_back(io::json{{"x", s.first}, {"W", s.second}});
      body["weight_samples"] = std::move(samples);
      io::write_artifact(weights_o.out, std::move(body));
      return rep.mu_weight.verdict == Verdict::convergent &&
                     rep.log_series.verdict == Verdict::convergent
                 ? 0
                 : 2;
    }

    if (gram->parsed()) {
      const Measure m = load_measure(gram_in);
      if (gram_count < 2) throw std::invalid_argument("gram-scan: --a-count must be >= 2");
      std::vector<double> a_grid;
      for (std::size_t i = 0; i < gram_count; ++i)
        a_grid.push_back(gram_alo + (gram_ahi - gram_alo) * static_cast<double>(i) /
                                        static_cast<double>(gram_count - 1));
      const GramScanReport rep =
          sigma_min_scan(discretize(m, gram_npp), a_grid, gram_cfg);
      if (gram_o.format == "csv") {
        io::write_text(gram_o.out, io::gram_csv(rep));
      } else {
        io::write_artifact(gram_o.out, io::to_json(rep));
      }
      return rep.has_transition ? 0 : 2;
    }

    if (dirich->parsed()) {
      io::json rows = io::json::array();
      double prev = -1.0;
      bool bounded = true;
      for (std::size_t n : dirich_ns) {
        const Interval support = half_open(0.25, static_cast<double>(n) + 0.25);
        SequenceSet lambda;
        std::vector<Interval> ramps;
        for (std::size_t mpt = 1; mpt <= n; ++mpt) {
          lambda.points.push_back(static_cast<double>(mpt));
          ramps.push_back(closed(static_cast<double>(mpt) - 0.25,
                                 static_cast<double>(mpt) + 0.25));
        }
        const ClaimCheck check = claim_residual(lambda, ramps, 1.0, support);
        io::json row = io::to_json(check);
        row["n"] = n;
        rows.push_back(std::move(row));
        const double r = std::fabs(check.residual_over_s2);
        if (prev >= 0.0 && r > 3.0 * std::max(prev, 1e-6)) bounded = false;
        prev = r;
      }
      io::json body;
      body["rows"] = std::move(rows);
      body["residual_growth_bounded"] = bounded;
      io::write_artifact(dirich_o.out, std::move(body));
      return bounded ? 0 : 2;
    }

    if (compare->parsed()) {
      const TypeEstimate est = load_estimate(compare_est);
      const GramScanReport rep = io::gram_from_json(io::read_artifact(compare_gram));
      io::json body;
      body["lower_bound"] = io::round_sig(est.lower_bound);
      body["has_transition"] = rep.has_transition;
      body["transition_estimate"] = io::round_sig(rep.transition_estimate);
      body["ratio"] = est.lower_bound > 0.0 && rep.has_transition
                          ? io::json(io::round_sig(rep.transition_estimate /
                                                   est.lower_bound))
                          : io::json();
      body["caveat"] = rep.caveat;
      io::write_artifact(compare_o.out, body);
      std::cout << "lower_bound "
                << io::round_sig(est.lower_bound) << "  transition "
                << (rep.has_transition ? io::round_sig(rep.transition_estimate) : 0.0)
                << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
