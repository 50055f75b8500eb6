#include "ran/tree_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ran {

namespace {
constexpr std::uint32_t kUnseen = std::numeric_limits<std::uint32_t>::max();
constexpr long double kDropBelow = 1e-40L;
}  // namespace

DepthHistogram face_depth_histogram(const FaceGenealogy& genealogy) {
  DepthHistogram hist;
  for (const auto& node : genealogy.nodes()) {
    if (node.is_leaf()) ++hist[node.depth];
  }
  return hist;
}

DepthHistogram face_depth_histogram(const FaceStore& faces) {
  DepthHistogram hist;
  for (const auto& f : faces.active()) ++hist[f.depth];
  return hist;
}

std::vector<long double> expected_depth_profile(std::uint64_t t) {
  std::vector<long double> e{0.0L, 1.0L};
  std::size_t lo = 1, hi = 1;
  for (std::uint64_t j = 0; j < t; ++j) {
    // Step j + 1 picks one of 2j + 1 faces.
    const long double p = 1.0L / static_cast<long double>(2 * j + 1);
    if (e.size() < hi + 2) e.resize(hi + 2, 0.0L);
    for (std::size_t k = hi + 1; k > lo; --k) e[k] = e[k] * (1.0L - p) + 3.0L * p * e[k - 1];
    e[lo] *= 1.0L - p;
    ++hi;
    while (lo < hi && e[lo] < kDropBelow) e[lo++] = 0.0L;
    while (hi > lo && e[hi] < kDropBelow) e[hi--] = 0.0L;
  }
  e.resize(hi + 1);
  return e;
}

DepthProfile depth_profile(const FaceGenealogy& genealogy, std::uint64_t t) {
  DepthProfile profile;
  profile.empirical = face_depth_histogram(genealogy);
  profile.expected = expected_depth_profile(t);
  profile.k_star = profile.empirical.empty() ? 0 : profile.empirical.rbegin()->first;
  return profile;
}

std::uint32_t tree_height(const FaceGenealogy& genealogy) {
  if (genealogy.empty()) throw Error("empty genealogy");
  std::uint32_t height = 0;
  std::vector<std::uint32_t> level{0};
  std::vector<std::uint32_t> next;
  while (true) {
    next.clear();
    for (std::uint32_t id : level) {
      const auto& node = genealogy[id];
      if (!node.is_leaf()) {
        for (std::uint32_t c = 0; c < 3; ++c) next.push_back(node.first_child + c);
      }
    }
    if (next.empty()) return height;
    ++height;
    level.swap(next);
  }
}

// ---------------------------------------------------------------------------

Bfs::Bfs(const RanGraph& graph)
    : graph_(graph), dist_(graph.n() + 1, kUnseen), parent_(graph.n() + 1, 0) {
  queue_.reserve(graph.n());
}

std::uint32_t Bfs::run(Vertex source) {
  for (Vertex v : queue_) dist_[v] = kUnseen;
  queue_.clear();
  (void)graph_.degree(source);
  dist_[source] = 0;
  parent_[source] = 0;
  queue_.push_back(source);
  for (std::size_t head = 0; head < queue_.size(); ++head) {
    const Vertex v = queue_[head];
    const std::uint32_t next = dist_[v] + 1;
    for (Vertex w : graph_.neighbors_unchecked(v)) {
      if (dist_[w] == kUnseen) {
        dist_[w] = next;
        parent_[w] = v;
        queue_.push_back(w);
      }
    }
  }
  farthest_ = queue_.back();
  return dist_[farthest_];
}

std::uint32_t Bfs::distance(Vertex source, Vertex target) {
  for (Vertex v : queue_) dist_[v] = kUnseen;
  queue_.clear();
  (void)graph_.degree(source);
  (void)graph_.degree(target);
  dist_[source] = 0;
  queue_.push_back(source);
  if (source == target) return 0;
  for (std::size_t head = 0; head < queue_.size(); ++head) {
    const Vertex v = queue_[head];
    const std::uint32_t next = dist_[v] + 1;
    for (Vertex w : graph_.neighbors_unchecked(v)) {
      if (dist_[w] == kUnseen) {
        if (w == target) {
          dist_[w] = next;
          queue_.push_back(w);
          return next;
        }
        dist_[w] = next;
        parent_[w] = v;
        queue_.push_back(w);
      }
    }
  }
  throw Error("graph is disconnected");
}

std::uint32_t diameter_exact(const RanGraph& graph) {
  if (graph.n() > kExactDiameterLimit) {
    throw Error("exact diameter is limited to n <= " + std::to_string(kExactDiameterLimit) + " (n = " +
                std::to_string(graph.n()) + "); use diameter_estimate");
  }
  Bfs bfs(graph);
  std::uint32_t best = 0;
  for (Vertex v = 1; v <= graph.n(); ++v) best = std::max(best, bfs.run(v));
  return best;
}

DiameterResult diameter_estimate(const RanGraph& graph, Engine& rng, std::size_t bfs_budget) {
  DiameterResult result;
  Bfs bfs(graph);
  std::uint32_t lower = 0;
  std::uint32_t upper = std::numeric_limits<std::uint32_t>::max();
  auto sweep = [&](Vertex v) {
    const std::uint32_t ecc = bfs.run(v);
    ++result.bfs_count;
    lower = std::max(lower, ecc);
    upper = std::min<std::uint64_t>(upper, 2ULL * ecc);
    return ecc;
  };

  const auto start = static_cast<Vertex>(1 + uniform_below(rng, graph.n()));
  sweep(start);
  const Vertex a = bfs.farthest();
  const std::uint32_t ecc_a = sweep(a);
  // Midpoint of the a-b path found by the second sweep.
  Vertex u = bfs.farthest();
  for (std::uint32_t s = 0; s < ecc_a / 2; ++s) u = bfs.parent(u);

  const std::uint32_t ecc_u = sweep(u);
  std::vector<Vertex> by_level(bfs.order().begin(), bfs.order().end());
  std::vector<std::uint32_t> level(graph.n() + 1);
  for (Vertex v : by_level) level[v] = bfs.dist(v);

  // Fringes from the deepest level inward.
  std::size_t pos = by_level.size();
  for (std::uint32_t i = ecc_u; i >= 1 && lower < upper; --i) {
    bool complete = true;
    while (pos > 0 && level[by_level[pos - 1]] == i) {
      if (result.bfs_count >= bfs_budget) {
        complete = false;
        break;
      }
      sweep(by_level[--pos]);
    }
    if (!complete) break;
    upper = std::min(upper, std::max(lower, 2 * (i - 1)));
  }

  result.lower = lower;
  result.upper = std::max(upper, lower);
  if (result.lower == result.upper) {
    result.exact = result.lower;
    result.method = "fringe_exact";
  } else {
    result.method = "fringe_bounds";
  }
  return result;
}

TypicalDistance typical_distance(const RanGraph& graph, std::size_t pair_count, Engine& rng) {
  if (graph.t() < 2) throw std::invalid_argument("typical distance needs at least two internal vertices (t >= 2)");
  if (pair_count == 0) throw std::invalid_argument("pair_count must be positive");
  const std::uint64_t internal = graph.n() - 3;
  Bfs bfs(graph);
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < pair_count; ++i) {
    const auto u = static_cast<Vertex>(4 + uniform_below(rng, internal));
    auto v = static_cast<Vertex>(4 + uniform_below(rng, internal - 1));
    if (v >= u) ++v;
    total += bfs.distance(u, v);
  }
  TypicalDistance out;
  out.pairs = pair_count;
  out.mean = static_cast<double>(total) / static_cast<double>(pair_count);
  out.mean_over_ln_n = out.mean / std::log(static_cast<double>(graph.n()));
  return out;
}

// ---------------------------------------------------------------------------

double eta_equation(double eta) { return eta - 1.0 - std::log(eta) - std::log(3.0); }

Constants solve_eta_rho() {
  double lo = 1.0 + 1e-9;
  double hi = 10.0;
  Constants c;
  double mid = 0.5 * (lo + hi);
  for (c.iterations = 1; c.iterations <= 200; ++c.iterations) {
    mid = 0.5 * (lo + hi);
    const double g = eta_equation(mid);
    if (std::abs(g) < 1e-12) break;
    (g < 0.0 ? lo : hi) = mid;
  }
  c.eta = mid;
  c.rho = 1.0 / mid;
  c.residual = std::abs(eta_equation(mid));
  return c;
}

}  // namespace ran
