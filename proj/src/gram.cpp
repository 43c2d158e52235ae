#include "expotype/gram.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <future>
#include <stdexcept>
#include <thread>

namespace expotype {

const char* const kGramCaveat =
    "finite node sets are spanned by enough exponentials; sigma_min measures "
    "conditioning, not completeness, and the decay-rate link to incompleteness "
    "is a heuristic";

void DiscretizedMeasure::validate() const {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!(nodes[i].second > 0.0))
      throw std::invalid_argument("discretized measure: weights must be positive");
    if (i > 0 && !(nodes[i - 1].first < nodes[i].first))
      throw std::invalid_argument("discretized measure: nodes must be strictly increasing");
  }
}

double DiscretizedMeasure::total_weight() const {
  double acc = 0.0;
  for (const auto& n : nodes) acc += n.second;
  return acc;
}

DiscretizedMeasure discretize(const Measure& m, std::size_t nodes_per_piece) {
  m.validate();
  if (nodes_per_piece < 1)
    throw std::invalid_argument("discretize: nodes_per_piece must be >= 1");
  DiscretizedMeasure dm;
  if (m.kind == MeasureKind::atomic) {
    for (const auto& a : m.atoms) dm.nodes.emplace_back(a.position, a.mass);
  } else {
    for (const auto& p : m.pieces) {
      const double len = p.support.length();
      if (!(p.height > 0.0) || !(len > 0.0)) continue;
      const double sub = len / static_cast<double>(nodes_per_piece);
      for (std::size_t j = 0; j < nodes_per_piece; ++j)
        dm.nodes.emplace_back(p.support.left + (static_cast<double>(j) + 0.5) * sub,
                              p.height * sub);
    }
  }
  dm.validate();
  return dm;
}

std::vector<double> frequency_grid(double a, std::size_t n_nodes,
                                   const GramConfig& config) {
  if (!(a > 0.0)) throw std::invalid_argument("frequency_grid: a must be positive");
  const double two_pi = 6.283185307179586476925286766559;
  std::vector<double> freqs;
  if (config.nested_freqs) {
    const double spacing = two_pi / (config.kappa * static_cast<double>(n_nodes));
    const auto count = static_cast<std::size_t>(std::floor(a / spacing + 1e-12)) + 1;
    for (std::size_t j = 0; j < std::max<std::size_t>(count, 2); ++j)
      freqs.push_back(static_cast<double>(j) * spacing);
  } else {
    const auto count = static_cast<std::size_t>(std::max(
        2.0, std::ceil(config.kappa * a * static_cast<double>(n_nodes) / two_pi)));
    for (std::size_t j = 0; j < count; ++j)
      freqs.push_back(a * static_cast<double>(j) / static_cast<double>(count - 1));
  }
  return freqs;
}

Eigen::MatrixXcd exponential_matrix(const DiscretizedMeasure& dm,
                                    const std::vector<double>& freqs) {
  dm.validate();
  for (std::size_t j = 1; j < freqs.size(); ++j)
    for (std::size_t k = 0; k < j; ++k)
      if (freqs[j] == freqs[k])
        throw std::invalid_argument("exponential_matrix: duplicate frequency");

  Eigen::MatrixXcd a(static_cast<Eigen::Index>(dm.nodes.size()),
                     static_cast<Eigen::Index>(freqs.size()));
  for (std::size_t n = 0; n < dm.nodes.size(); ++n) {
    const double root = std::sqrt(dm.nodes[n].second);
    const double x = dm.nodes[n].first;
    for (std::size_t j = 0; j < freqs.size(); ++j) {
      const double phase = freqs[j] * x;
      a(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(j)) =
          std::complex<double>(root * std::cos(phase), root * std::sin(phase));
    }
  }
  return a;
}

double sigma_min(const Eigen::MatrixXcd& matrix) {
  if (matrix.rows() == 0 || matrix.cols() == 0)
    throw std::invalid_argument("sigma_min: empty matrix");
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(matrix);
  const auto& vals = svd.singularValues();
  return vals(vals.size() - 1);
}

namespace {

std::size_t thread_cap() {
  if (const char* env = std::getenv(kThreadsEnvVar)) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<std::size_t>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

// Centered contiguous subset of the nodes, so a smaller count probes the
// same local structure on a narrower window.
DiscretizedMeasure centered_subset(const DiscretizedMeasure& dm, std::size_t count) {
  DiscretizedMeasure out;
  const std::size_t n = dm.nodes.size();
  count = std::min(count, n);
  const std::size_t start = (n - count) / 2;
  out.nodes.assign(dm.nodes.begin() + static_cast<std::ptrdiff_t>(start),
                   dm.nodes.begin() + static_cast<std::ptrdiff_t>(start + count));
  return out;
}

struct ScanCell {
  double sigma = 0.0;
  double decay = 0.0;
};

ScanCell scan_one(const DiscretizedMeasure& dm, double a, const GramConfig& config) {
  const std::size_t n = dm.nodes.size();
  std::vector<std::size_t> subset_sizes{std::max<std::size_t>(2, n / 4),
                                        std::max<std::size_t>(2, n / 2), n};
  subset_sizes.erase(std::unique(subset_sizes.begin(), subset_sizes.end()),
                     subset_sizes.end());

  std::vector<double> log2_n, normalized;
  ScanCell cell;
  for (std::size_t sz : subset_sizes) {
    const DiscretizedMeasure sub = centered_subset(dm, sz);
    const std::vector<double> freqs = frequency_grid(a, sz, config);
    const double s = sigma_min(exponential_matrix(sub, freqs));
    if (sz == n) cell.sigma = s;
    log2_n.push_back(std::log2(static_cast<double>(sz)));
    normalized.push_back(
        std::log(std::max(s, 1e-300) / std::sqrt(static_cast<double>(freqs.size()))));
  }
  cell.decay = least_squares_slope(log2_n, normalized);
  return cell;
}

}  // namespace

GramScanReport sigma_min_scan(const DiscretizedMeasure& dm,
                              const std::vector<double>& a_grid,
                              const GramConfig& config) {
  dm.validate();
  if (dm.nodes.empty())
    throw std::invalid_argument("sigma_min_scan: no nodes");
  if (a_grid.empty())
    throw std::invalid_argument("sigma_min_scan: empty bandwidth grid");
  for (std::size_t i = 1; i < a_grid.size(); ++i)
    if (!(a_grid[i - 1] < a_grid[i]))
      throw std::invalid_argument("sigma_min_scan: bandwidth grid must be ascending");

  GramScanReport rep;
  rep.a_grid = a_grid;
  rep.n_nodes = dm.nodes.size();
  rep.kappa = config.kappa;
  rep.caveat = kGramCaveat;
  rep.sigma_mins.resize(a_grid.size());
  rep.decay_fits.resize(a_grid.size());

  const std::size_t workers = std::min(thread_cap(), a_grid.size());
  std::vector<std::future<void>> futures;
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= a_grid.size()) return;
      const ScanCell cell = scan_one(dm, a_grid[i], config);
      rep.sigma_mins[i] = cell.sigma;
      rep.decay_fits[i] = cell.decay;
    }
  };
  if (workers <= 1) {
    worker();
  } else {
    futures.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
      futures.push_back(std::async(std::launch::async, worker));
    for (auto& f : futures) f.get();
  }

  const double peak = *std::max_element(rep.sigma_mins.begin(), rep.sigma_mins.end());
  const double floor = config.floor_rel * peak;
  for (std::size_t i = 0; i < a_grid.size(); ++i) {
    if (std::fabs(rep.decay_fits[i]) < config.slope_threshold &&
        rep.sigma_mins[i] > floor) {
      rep.has_transition = true;
      rep.transition_estimate = a_grid[i];
      break;
    }
  }
  return rep;
}

}  // namespace expotype
