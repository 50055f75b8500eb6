#include <algorithm>
#include <cmath>
#include <limits>

#include "doctest.h"
#include "ran/generator.hpp"
#include "ran/stochastics.hpp"
#include "ran/tree_metrics.hpp"

using namespace ran;

namespace {

// All-pairs shortest paths by Floyd-Warshall.
std::uint32_t floyd_diameter(const RanGraph& g) {
  const std::size_t n = g.n();
  constexpr std::uint32_t inf = std::numeric_limits<std::uint32_t>::max() / 4;
  std::vector<std::uint32_t> d((n + 1) * (n + 1), inf);
  for (std::size_t v = 1; v <= n; ++v) d[v * (n + 1) + v] = 0;
  for (const auto& [u, v] : g.edges()) d[u * (n + 1) + v] = d[v * (n + 1) + u] = 1;
  for (std::size_t k = 1; k <= n; ++k)
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t j = 1; j <= n; ++j)
        d[i * (n + 1) + j] = std::min(d[i * (n + 1) + j], d[i * (n + 1) + k] + d[k * (n + 1) + j]);
  std::uint32_t diameter = 0;
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j) diameter = std::max(diameter, d[i * (n + 1) + j]);
  return diameter;
}

}  // namespace

TEST_CASE("depth histogram on the smallest graphs") {
  CHECK(face_depth_histogram(generate({0, 1}).genealogy) == DepthHistogram{{1, 1}});
  CHECK(face_depth_histogram(generate({1, 1}).genealogy) == DepthHistogram{{2, 3}});
}

TEST_CASE("depth histogram counts only active faces") {
  for (std::uint64_t seed : {1, 2, 3}) {
    const auto g = generate({1000, seed});
    const auto from_tree = face_depth_histogram(g.genealogy);
    CHECK(from_tree == face_depth_histogram(g.faces));
    std::uint64_t total = 0;
    for (const auto& [depth, count] : from_tree) total += count;
    CHECK(total == 2001);
  }
}

TEST_CASE("expected depth profile small cases") {
  const auto p0 = expected_depth_profile(0);
  CHECK(p0[0] == 0.0L);
  CHECK(p0[1] == 1.0L);
  const auto p1 = expected_depth_profile(1);
  CHECK(static_cast<double>(p1[2]) == doctest::Approx(3.0));
  CHECK(static_cast<double>(p1[1]) == doctest::Approx(0.0));
  const auto p2 = expected_depth_profile(2);
  CHECK(static_cast<double>(p2[2]) == doctest::Approx(2.0));
  CHECK(static_cast<double>(p2[3]) == doctest::Approx(3.0));
}

TEST_CASE("expected depth profile conserves the face count") {
  for (std::uint64_t t : {0, 1, 10, 1000, 100000}) {
    long double total = 0;
    for (long double e : expected_depth_profile(t)) total += e;
    CHECK(std::abs(static_cast<double>(total) - (2.0 * t + 1)) <= 1e-9);
  }
}

TEST_CASE("expected depth profile equals the enumerated expectation") {
  for (std::uint64_t t = 1; t <= 6; ++t) {
    const auto table = enumerate_small(t);
    std::vector<double> exact(t + 3, 0.0);
    for (const auto& o : table.outcomes)
      for (const auto& [depth, count] : o.summary.depths) exact[depth] += o.probability * count;
    const auto dp = expected_depth_profile(t);
    for (std::size_t k = 1; k < exact.size(); ++k) {
      const double value = k < dp.size() ? static_cast<double>(dp[k]) : 0.0;
      CHECK(value == doctest::Approx(exact[k]).epsilon(1e-12));
    }
  }
}

TEST_CASE("tree height") {
  CHECK(tree_height(generate({0, 1}).genealogy) == 0);
  CHECK(tree_height(generate({1, 1}).genealogy) == 1);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto g = generate({2000, seed});
    const auto hist = face_depth_histogram(g.genealogy);
    CHECK(tree_height(g.genealogy) == hist.rbegin()->first - 1);
    CHECK(g.genealogy.leaf_count() == 4001);
    CHECK(g.genealogy.internal_count() == 2000);
  }
}

TEST_CASE("exact diameter on small graphs") {
  CHECK(diameter_exact(generate({0, 1}).graph) == 1);
  CHECK(diameter_exact(generate({1, 1}).graph) == 1);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) CHECK(diameter_exact(generate({2, seed}).graph) == 2);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto g = generate({60, seed}).graph;
    CHECK(diameter_exact(g) == floyd_diameter(g));
  }
}

TEST_CASE("exact diameter refuses large graphs") {
  CHECK_THROWS_AS(diameter_exact(generate({kExactDiameterLimit, 1}).graph), Error);
}

TEST_CASE("diameter bounds bracket the exact value on 50 seeds") {
  for (std::uint64_t t : {10, 100, 1000}) {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
      const auto g = generate({t, seed}).graph;
      Engine rng(seed);
      const auto est = diameter_estimate(g, rng);
      const auto exact = diameter_exact(g);
      CHECK(est.lower <= exact);
      CHECK(exact <= est.upper);
    }
  }
}

TEST_CASE("diameter estimate on the triangle and determinism") {
  Engine rng(1);
  const auto tri = diameter_estimate(generate({0, 1}).graph, rng);
  CHECK(tri.lower == 1);
  CHECK(tri.upper == 1);

  const auto g = generate({50000, 4}).graph;
  Engine a(10), b(10);
  const auto first = diameter_estimate(g, a);
  const auto second = diameter_estimate(g, b);
  CHECK(first.lower == second.lower);
  CHECK(first.upper == second.upper);
  CHECK(first.lower <= first.upper);
}

TEST_CASE("diameter at most twice the tree height") {
  for (std::uint64_t t : {1, 2, 10, 500, 5000}) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const auto g = generate({t, seed});
      CHECK(diameter_exact(g.graph) <= 2 * tree_height(g.genealogy));
    }
  }
}

TEST_CASE("BFS distances are symmetric") {
  const auto g = generate({3000, 6}).graph;
  Bfs bfs(g);
  Engine rng(3);
  for (int i = 0; i < 50; ++i) {
    const auto u = static_cast<Vertex>(1 + uniform_below(rng, g.n()));
    const auto v = static_cast<Vertex>(1 + uniform_below(rng, g.n()));
    const auto uv = bfs.distance(u, v);
    CHECK(uv == bfs.distance(v, u));
    bfs.run(u);
    CHECK(bfs.dist(v) == uv);
    CHECK(bfs.distance(u, u) == 0);
  }
}

TEST_CASE("typical distance") {
  Engine rng(1);
  CHECK_THROWS_AS(typical_distance(generate({1, 1}).graph, 10, rng), std::invalid_argument);
  // With two internal vertices, vertex 5 is always placed in a face of vertex 4.
  const auto two = typical_distance(generate({2, 1}).graph, 20, rng);
  CHECK(two.mean == 1.0);
  const auto big = typical_distance(generate({20000, 2}).graph, 300, rng);
  CHECK(big.pairs == 300);
  CHECK(big.mean_over_ln_n == doctest::Approx(big.mean / std::log(20003.0)));
}

TEST_CASE("eta and rho") {
  const auto c = solve_eta_rho();
  CHECK(c.eta > 3.2892);
  CHECK(c.eta < 3.2894);
  CHECK(c.residual < 1e-12);
  CHECK(c.rho == doctest::Approx(1.0 / c.eta).epsilon(1e-15));
  CHECK(eta_equation(1.0) == doctest::Approx(-std::log(3.0)));
  CHECK(eta_equation(10.0) > 0);
}
