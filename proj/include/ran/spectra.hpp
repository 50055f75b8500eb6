#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "ran/generator.hpp"
#include "ran/lanczos.hpp"

namespace ran {

struct DegreeEntry {
  Vertex vertex = 0;
  std::uint32_t degree = 0;
  bool operator==(const DegreeEntry&) const = default;
};

using DegreeHistogram = std::map<std::uint32_t, std::uint64_t>;

struct DegreeReport {
  std::vector<DegreeEntry> top_k;
  DegreeHistogram histogram;
  std::optional<double> alpha_hat;
};

/// The k largest degrees, descending; equal degrees list the smaller label
/// first. Throws std::invalid_argument unless 1 <= k <= n.
std::vector<DegreeEntry> top_k_degrees(const RanGraph& graph, std::size_t k);

DegreeHistogram degree_histogram(const RanGraph& graph);

/// Discrete power-law MLE, alpha = 1 + N / sum ln(d / (d_min - 1/2)), over
/// degrees >= d_min. Throws ran::Error when fewer than two distinct degrees
/// reach d_min.
double fit_power_law_exponent(const DegreeHistogram& histogram, std::uint32_t d_min);

struct SpectralReport {
  std::vector<double> lambdas;
  std::vector<double> ratios;  // lambda_i / sqrt(Delta_i)
  std::vector<double> residuals;
  std::vector<std::size_t> iterations;
  double solver_tol = 1e-8;
  bool converged = false;
};

inline constexpr double kDefaultEigenTol = 1e-8;
inline constexpr std::size_t kEigenIterationCap = 10000;

/// k largest adjacency eigenvalues. Non-convergence is reported through
/// `converged` and `residuals`, not thrown.
SpectralReport top_k_eigenvalues(const RanGraph& graph, std::size_t k, double tol = kDefaultEigenTol);

enum class Part : std::uint8_t { S1 = 1, S2 = 2, S3 = 3 };

/// Vertex split by insertion step at floor(t^(1/8)) and floor(t^(9/16)),
/// the star forest F between S1 and the S3 vertices with a single S1
/// neighbor, and the remainder H.
struct Decomposition {
  std::uint64_t t1 = 0;
  std::uint64_t t2 = 0;
  std::vector<Part> part;  // indexed by label; slot 0 unused
  std::vector<Vertex> s3_prime;
  std::vector<Edge> f_edges;
  std::vector<Edge> h_edges;
  std::size_t s1_size = 0, s2_size = 0, s3_size = 0;
  /// Largest star: center in S1 and its number of F edges.
  Vertex largest_star_center = 0;
  std::size_t largest_star_size = 0;

  double lambda1_f() const;
};

/// floor(t^(num/den)) for the cutoffs above.
std::uint64_t floor_power(std::uint64_t t, unsigned num, unsigned den);

/// Requires t >= 256; throws std::invalid_argument otherwise.
Decomposition star_forest_decomposition(const RanGraph& graph);

struct EigenRatioReport {
  SpectralReport spectral;
  std::vector<DegreeEntry> top_k;
  /// Present when t >= 256.
  std::optional<double> lambda1_h;
  std::optional<double> lambda1_h_over_t_quarter;
  std::optional<double> lambda1_f;
};

EigenRatioReport eigen_ratio_report(const RanGraph& graph, std::size_t k, double tol = kDefaultEigenTol);

}  // namespace ran
