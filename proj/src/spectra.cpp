#include "ran/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ran {

std::vector<DegreeEntry> top_k_degrees(const RanGraph& graph, std::size_t k) {
  if (k == 0 || k > graph.n()) {
    throw std::invalid_argument("top-k size " + std::to_string(k) + " outside 1.." + std::to_string(graph.n()));
  }
  std::vector<DegreeEntry> all;
  all.reserve(graph.n());
  for (Vertex v = 1; v <= graph.n(); ++v) all.push_back({v, graph.degree(v)});
  auto before = [](const DegreeEntry& a, const DegreeEntry& b) {
    return a.degree != b.degree ? a.degree > b.degree : a.vertex < b.vertex;
  };
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k), all.end(), before);
  all.resize(k);
  return all;
}

DegreeHistogram degree_histogram(const RanGraph& graph) {
  DegreeHistogram hist;
  for (Vertex v = 1; v <= graph.n(); ++v) ++hist[graph.degree(v)];
  return hist;
}

double fit_power_law_exponent(const DegreeHistogram& histogram, std::uint32_t d_min) {
  if (d_min == 0) throw std::invalid_argument("d_min must be at least 1");
  const double shift = static_cast<double>(d_min) - 0.5;
  double count = 0.0;
  double log_sum = 0.0;
  std::size_t distinct = 0;
  for (auto it = histogram.lower_bound(d_min); it != histogram.end(); ++it) {
    if (it->second == 0) continue;
    ++distinct;
    count += static_cast<double>(it->second);
    log_sum += static_cast<double>(it->second) * std::log(it->first / shift);
  }
  if (distinct < 2) {
    throw Error("degenerate histogram: " + std::to_string(distinct) + " distinct degree(s) >= " +
                std::to_string(d_min) + ", need at least 2");
  }
  return 1.0 + count / log_sum;
}

SpectralReport top_k_eigenvalues(const RanGraph& graph, std::size_t k, double tol) {
  if (k == 0 || k > graph.n()) throw std::invalid_argument("k must lie in 1..n");
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  LanczosOptions options;
  options.k = k;
  options.tol = tol;
  options.max_iterations_per_value = kEigenIterationCap;
  const auto solved = lanczos_largest(SparseSymmetric::adjacency(graph), options);

  SpectralReport report;
  report.lambdas = solved.values;
  report.residuals = solved.residuals;
  report.iterations = solved.iterations;
  report.solver_tol = tol;
  report.converged = solved.converged;
  const auto top = top_k_degrees(graph, k);
  for (std::size_t i = 0; i < k; ++i) {
    report.ratios.push_back(report.lambdas[i] / std::sqrt(static_cast<double>(top[i].degree)));
  }
  return report;
}

double Decomposition::lambda1_f() const { return std::sqrt(static_cast<double>(largest_star_size)); }

std::uint64_t floor_power(std::uint64_t t, unsigned num, unsigned den) {
  if (t == 0) return 0;
  const long double exact = std::pow(static_cast<long double>(t), static_cast<long double>(num) / den);
  // Nudge up so exact integer powers survive pow's last-bit rounding.
  return static_cast<std::uint64_t>(std::floor(exact * (1.0L + 1e-15L)));
}

Decomposition star_forest_decomposition(const RanGraph& graph) {
  const std::uint64_t t = graph.t();
  if (t < 256) {
    throw std::invalid_argument("star forest decomposition needs t >= 256, got t = " + std::to_string(t));
  }
  Decomposition d;
  d.t1 = floor_power(t, 1, 8);
  d.t2 = floor_power(t, 9, 16);
  const std::size_t n = graph.n();
  d.part.assign(n + 1, Part::S3);
  for (Vertex v = 1; v <= n; ++v) {
    const std::uint64_t step = graph.insertion_step(v);
    d.part[v] = step <= d.t1 ? Part::S1 : step <= d.t2 ? Part::S2 : Part::S3;
  }
  d.s1_size = static_cast<std::size_t>(std::count(d.part.begin() + 1, d.part.end(), Part::S1));
  d.s2_size = static_cast<std::size_t>(std::count(d.part.begin() + 1, d.part.end(), Part::S2));
  d.s3_size = n - d.s1_size - d.s2_size;

  std::vector<std::uint8_t> single_s1(n + 1, 0);
  for (Vertex v = 1; v <= n; ++v) {
    if (d.part[v] != Part::S3) continue;
    std::size_t s1_neighbors = 0;
    for (Vertex w : graph.neighbors_unchecked(v)) s1_neighbors += d.part[w] == Part::S1;
    if (s1_neighbors >= 2) {
      d.s3_prime.push_back(v);
    } else {
      single_s1[v] = 1;
    }
  }

  std::vector<std::size_t> star(n + 1, 0);
  for (const auto& e : graph.edges()) {
    const auto [u, v] = e;
    const bool u_center = d.part[u] == Part::S1 && single_s1[v];
    const bool v_center = d.part[v] == Part::S1 && single_s1[u];
    if (u_center || v_center) {
      d.f_edges.push_back(e);
      ++star[u_center ? u : v];
    } else {
      d.h_edges.push_back(e);
    }
  }
  const auto largest = std::max_element(star.begin(), star.end());
  d.largest_star_center = static_cast<Vertex>(largest - star.begin());
  d.largest_star_size = *largest;
  return d;
}

EigenRatioReport eigen_ratio_report(const RanGraph& graph, std::size_t k, double tol) {
  EigenRatioReport report;
  report.spectral = top_k_eigenvalues(graph, k, tol);
  report.top_k = top_k_degrees(graph, k);
  if (graph.t() >= 256) {
    const auto d = star_forest_decomposition(graph);
    LanczosOptions options;
    options.k = 1;
    options.tol = tol;
    const auto h = lanczos_largest(SparseSymmetric(graph.n(), d.h_edges), options);
    report.lambda1_h = h.values.front();
    report.lambda1_h_over_t_quarter = h.values.front() / std::pow(static_cast<double>(graph.t()), 0.25);
    report.lambda1_f = d.lambda1_f();
  }
  return report;
}

}  // namespace ran
