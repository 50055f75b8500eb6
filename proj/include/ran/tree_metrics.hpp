#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ran/generator.hpp"

namespace ran {

using DepthHistogram = std::map<std::uint32_t, std::uint64_t>;

/// Active-face counts by depth. The initial face has depth 1.
DepthHistogram face_depth_histogram(const FaceGenealogy& genealogy);
DepthHistogram face_depth_histogram(const FaceStore& faces);

/// E[F_t(k)] for k = 0..k_max (entry 0 is always 0), from the exact
/// one-step recursion under uniform face choice. Entries below 1e-40 are
/// dropped as they arise, which changes the total by far less than 1e-9.
std::vector<long double> expected_depth_profile(std::uint64_t t);

struct DepthProfile {
  DepthHistogram empirical;
  std::vector<long double> expected;
  std::uint32_t k_star = 0;
};

DepthProfile depth_profile(const FaceGenealogy& genealogy, std::uint64_t t);

/// Edge count of the longest root-to-leaf path, found by walking the tree.
std::uint32_t tree_height(const FaceGenealogy& genealogy);

/// Reusable breadth-first search over a RanGraph.
class Bfs {
 public:
  explicit Bfs(const RanGraph& graph);

  /// Distances from `source`; returns the eccentricity of `source`.
  std::uint32_t run(Vertex source);
  /// Distance from source to target, stopping as soon as target is reached.
  std::uint32_t distance(Vertex source, Vertex target);

  std::uint32_t dist(Vertex v) const { return dist_[v]; }
  Vertex farthest() const { return farthest_; }
  Vertex parent(Vertex v) const { return parent_[v]; }
  /// Vertices in visit order, i.e. by nondecreasing distance.
  const std::vector<Vertex>& order() const { return queue_; }

 private:
  const RanGraph& graph_;
  std::vector<std::uint32_t> dist_;
  std::vector<Vertex> parent_;
  std::vector<Vertex> queue_;
  Vertex farthest_ = 0;
};

inline constexpr std::size_t kExactDiameterLimit = 20000;
inline constexpr std::size_t kDefaultBfsBudget = 256;

/// Maximum eccentricity by BFS from every vertex. Throws ran::Error when
/// n > kExactDiameterLimit; use diameter_estimate instead.
std::uint32_t diameter_exact(const RanGraph& graph);

struct DiameterResult {
  std::optional<std::uint32_t> exact;
  std::uint32_t lower = 0;
  std::uint32_t upper = 0;
  std::string method;
  std::optional<std::uint32_t> tree_height;
  std::size_t bfs_count = 0;
};

/// Double sweep from a random start for the lower bound, then fringe
/// refinement from the sweep midpoint u: after the eccentricities of every
/// vertex at distance >= i from u are known, the diameter is at most
/// max(lower, 2(i - 1)). Stops when the bounds meet or after `bfs_budget`
/// searches.
DiameterResult diameter_estimate(const RanGraph& graph, Engine& rng, std::size_t bfs_budget = kDefaultBfsBudget);

struct TypicalDistance {
  double mean = 0.0;
  double mean_over_ln_n = 0.0;
  std::size_t pairs = 0;
  static constexpr double kLimit = 6.0 / 11.0;
};

/// Mean distance over `pair_count` i.i.d. uniform pairs of distinct internal
/// vertices (labels >= 4). Throws std::invalid_argument when t < 2.
TypicalDistance typical_distance(const RanGraph& graph, std::size_t pair_count, Engine& rng);

struct Constants {
  double eta = 0.0;
  double rho = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

/// Root above 1 of eta - 1 - ln(eta) = ln 3, by bisection on [1 + 1e-9, 10]
/// until |g| < 1e-12; rho = 1 / eta.
Constants solve_eta_rho();
double eta_equation(double eta);

}  // namespace ran
