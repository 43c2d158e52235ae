#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

#include "expotype/gram.hpp"
#include "expotype/measure.hpp"

using namespace expotype;

namespace {

constexpr double kPi = 3.14159265358979323846;

DiscretizedMeasure integer_nodes(int n_half, double weight = 1.0) {
  DiscretizedMeasure dm;
  for (int k = -n_half; k <= n_half; ++k)
    dm.nodes.emplace_back(static_cast<double>(k), weight);
  return dm;
}

}  // namespace

TEST_CASE("discretize keeps atoms verbatim and quadratures pieces at midpoints") {
  const Measure comb = generate("comb", {.R = 6.0});
  const DiscretizedMeasure da = discretize(comb, 4);
  REQUIRE(da.nodes.size() == comb.atoms.size());
  for (std::size_t i = 0; i < da.nodes.size(); ++i) {
    CHECK(da.nodes[i].first == comb.atoms[i].position);
    CHECK(da.nodes[i].second == comb.atoms[i].mass);
  }

  const Measure leb = generate("lebesgue", {.R = 5.0});
  const DiscretizedMeasure dl = discretize(leb, 10);
  REQUIRE(dl.nodes.size() == 10);
  for (std::size_t j = 0; j < 10; ++j) {
    CHECK(dl.nodes[j].first == doctest::Approx(-4.5 + static_cast<double>(j)));
    CHECK(dl.nodes[j].second == doctest::Approx(1.0));
  }
  CHECK(dl.total_weight() == doctest::Approx(leb.total_mass()).epsilon(1e-13));

  CHECK_THROWS_AS(discretize(leb, 0), std::invalid_argument);
}

TEST_CASE("discretized measure validation") {
  DiscretizedMeasure bad_weight;
  bad_weight.nodes = {{0.0, 1.0}, {1.0, 0.0}};
  CHECK_THROWS_AS(bad_weight.validate(), std::invalid_argument);
  DiscretizedMeasure bad_order;
  bad_order.nodes = {{1.0, 1.0}, {0.0, 1.0}};
  CHECK_THROWS_AS(bad_order.validate(), std::invalid_argument);
}

TEST_CASE("proportional frequency grid spans [0, a] with the density-scaled count") {
  GramConfig cfg;
  cfg.kappa = 4.0;
  const std::vector<double> f = frequency_grid(kPi, 128, cfg);
  REQUIRE(f.size() == 256);  // ceil(kappa * a * n / 2pi)
  CHECK(f.front() == 0.0);
  CHECK(f.back() == kPi);
  for (std::size_t j = 1; j < f.size(); ++j) CHECK(f[j] > f[j - 1]);

  CHECK_THROWS_AS(frequency_grid(0.0, 16, cfg), std::invalid_argument);
}

TEST_CASE("nested frequency grids are prefixes of each other") {
  GramConfig cfg;
  cfg.kappa = 4.0;
  cfg.nested_freqs = true;
  const std::vector<double> small = frequency_grid(kPi, 128, cfg);
  const std::vector<double> big = frequency_grid(2.0 * kPi, 128, cfg);
  REQUIRE(small.size() == 257);  // floor(a kappa n / 2pi) + 1
  REQUIRE(big.size() > small.size());
  for (std::size_t j = 0; j < small.size(); ++j) CHECK(small[j] == big[j]);

  const double spacing = 2.0 * kPi / (4.0 * 128.0);
  for (std::size_t j = 0; j < small.size(); ++j)
    CHECK(small[j] == static_cast<double>(j) * spacing);
}

TEST_CASE("exponential matrix entries match the elementwise formula") {
  DiscretizedMeasure dm;
  dm.nodes = {{-1.5, 0.5}, {0.0, 2.0}, {0.25, 1.0}, {3.0, 0.125}};
  const std::vector<double> freqs = {0.0, 0.7, 1.3};
  const Eigen::MatrixXcd a = exponential_matrix(dm, freqs);
  REQUIRE(a.rows() == 4);
  REQUIRE(a.cols() == 3);
  for (std::size_t n = 0; n < dm.nodes.size(); ++n) {
    const double root = std::sqrt(dm.nodes[n].second);
    for (std::size_t j = 0; j < freqs.size(); ++j) {
      const double phase = freqs[j] * dm.nodes[n].first;
      const auto v = a(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(j));
      CHECK(v.real() == root * std::cos(phase));
      CHECK(v.imag() == root * std::sin(phase));
    }
  }

  CHECK_THROWS_AS(exponential_matrix(dm, {0.5, 0.5}), std::invalid_argument);
}

TEST_CASE("sigma_min on matrices with known spectra") {
  Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(3, 3);
  CHECK(sigma_min(eye) == doctest::Approx(1.0).epsilon(1e-12));

  Eigen::MatrixXcd diag = Eigen::MatrixXcd::Zero(3, 3);
  diag(0, 0) = 3.0;
  diag(1, 1) = 2.0;
  diag(2, 2) = 0.5;
  CHECK(sigma_min(diag) == doctest::Approx(0.5).epsilon(1e-12));

  Eigen::MatrixXcd anti = Eigen::MatrixXcd::Zero(2, 2);
  anti(0, 1) = 2.0;
  anti(1, 0) = std::complex<double>(0.0, 1.0);
  CHECK(sigma_min(anti) == doctest::Approx(1.0).epsilon(1e-12));

  Eigen::MatrixXcd empty;
  CHECK_THROWS_AS(sigma_min(empty), std::invalid_argument);
}

TEST_CASE("scaling every weight by t scales sigma_min by sqrt(t)") {
  GramConfig cfg;
  const std::vector<double> freqs = frequency_grid(2.0, 9, cfg);
  const DiscretizedMeasure base = integer_nodes(4, 1.0);
  const DiscretizedMeasure heavy = integer_nodes(4, 2.0);
  const double s1 = sigma_min(exponential_matrix(base, freqs));
  const double s2 = sigma_min(exponential_matrix(heavy, freqs));
  CHECK(s2 == doctest::Approx(std::sqrt(2.0) * s1).epsilon(1e-11));
}

TEST_CASE("translating the nodes leaves sigma_min invariant") {
  GramConfig cfg;
  const std::vector<double> freqs = frequency_grid(2.5, 11, cfg);
  DiscretizedMeasure dm;
  for (int k = 0; k < 11; ++k)
    dm.nodes.emplace_back(0.9 * k + 0.05 * std::sin(3.7 * k), 1.0 + 0.1 * (k % 3));
  DiscretizedMeasure shifted = dm;
  for (auto& n : shifted.nodes) n.first += 17.25;
  const double s1 = sigma_min(exponential_matrix(dm, freqs));
  const double s2 = sigma_min(exponential_matrix(shifted, freqs));
  CHECK(s2 == doctest::Approx(s1).epsilon(1e-10));
}

TEST_CASE("sigma_min grows with bandwidth on nested grids") {
  // With nested grids and at least as many frequencies as nodes, raising a
  // only appends columns, so the smallest singular value cannot drop.
  GramConfig cfg;
  cfg.kappa = 4.0;
  cfg.nested_freqs = true;
  const DiscretizedMeasure dm = integer_nodes(8);  // 17 nodes
  double prev = -1.0;
  for (double a : {kPi, 1.25 * kPi, 1.5 * kPi, 2.0 * kPi}) {
    const std::vector<double> freqs = frequency_grid(a, dm.nodes.size(), cfg);
    REQUIRE(freqs.size() >= dm.nodes.size());
    const double s = sigma_min(exponential_matrix(dm, freqs));
    CHECK(s >= prev - 1e-12);
    prev = s;
  }
}

TEST_CASE("scan report carries the grid, the caveat and reproducible cells") {
  const Measure comb = generate("comb", {.R = 8.0});
  const DiscretizedMeasure dm = discretize(comb, 1);
  const std::vector<double> a_grid = {0.5, 1.0, 1.5, 2.0, 2.5, 3.0};
  GramConfig cfg;

  const GramScanReport rep = sigma_min_scan(dm, a_grid, cfg);
  CHECK(rep.a_grid == a_grid);
  CHECK(rep.n_nodes == dm.nodes.size());
  CHECK(rep.kappa == cfg.kappa);
  CHECK(rep.caveat == kGramCaveat);
  REQUIRE(rep.sigma_mins.size() == a_grid.size());
  REQUIRE(rep.decay_fits.size() == a_grid.size());
  for (double s : rep.sigma_mins) CHECK(s > 0.0);
  if (rep.has_transition) {
    bool on_grid = false;
    for (double a : a_grid) on_grid = on_grid || a == rep.transition_estimate;
    CHECK(on_grid);
  }

  const GramScanReport again = sigma_min_scan(dm, a_grid, cfg);
  for (std::size_t i = 0; i < a_grid.size(); ++i) {
    CHECK(rep.sigma_mins[i] == again.sigma_mins[i]);
    CHECK(rep.decay_fits[i] == again.decay_fits[i]);
  }

  // A single worker must produce the same cells as the default pool.
  setenv("EXPOTYPE_THREADS", "1", 1);
  const GramScanReport serial = sigma_min_scan(dm, a_grid, cfg);
  unsetenv("EXPOTYPE_THREADS");
  for (std::size_t i = 0; i < a_grid.size(); ++i) {
    CHECK(rep.sigma_mins[i] == serial.sigma_mins[i]);
    CHECK(rep.decay_fits[i] == serial.decay_fits[i]);
  }
}

TEST_CASE("scan input validation") {
  const DiscretizedMeasure dm = integer_nodes(4);
  GramConfig cfg;
  CHECK_THROWS_AS(sigma_min_scan(dm, {}, cfg), std::invalid_argument);
  CHECK_THROWS_AS(sigma_min_scan(dm, {2.0, 1.0}, cfg), std::invalid_argument);
  DiscretizedMeasure empty;
  CHECK_THROWS_AS(sigma_min_scan(empty, {1.0}, cfg), std::invalid_argument);
}
