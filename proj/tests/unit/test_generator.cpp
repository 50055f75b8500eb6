#include <algorithm>
#include <array>
#include <cmath>
#include <set>

#include "doctest.h"
#include "ran/generator.hpp"

using namespace ran;

namespace {

std::set<Edge> edge_set(const RanGraph& g) { return {g.edges().begin(), g.edges().end()}; }

std::array<Vertex, 3> sorted_face(std::array<Vertex, 3> f) {
  std::sort(f.begin(), f.end());
  return f;
}

}  // namespace

TEST_CASE("initial triangle") {
  const auto g = generate({0, 5});
  CHECK(g.graph.n() == 3);
  CHECK(g.graph.m() == 3);
  CHECK(g.faces.count() == 1);
  CHECK(edge_set(g.graph) == std::set<Edge>{{1, 2}, {1, 3}, {2, 3}});
  for (Vertex v = 1; v <= 3; ++v) CHECK(g.graph.degree(v) == 2);
}

TEST_CASE("count identities") {
  for (std::uint64_t seed : {1, 2, 99}) {
    const auto g = generate({100, seed});
    CHECK(g.graph.n() == 103);
    CHECK(g.graph.m() == 303);
    CHECK(g.faces.count() == 201);
    CHECK(degree_sum(g.graph) == 606);
    CHECK(g.genealogy.leaf_count() == 201);
    CHECK(g.genealogy.internal_count() == 100);
  }
}

TEST_CASE("one step gives K4") {
  const auto g = generate({1, 12345});
  std::set<Edge> k4;
  for (Vertex u = 1; u <= 4; ++u)
    for (Vertex v = u + 1; v <= 4; ++v) k4.insert({u, v});
  CHECK(edge_set(g.graph) == k4);
  const auto n4 = g.graph.neighbors(4);
  CHECK(std::vector<Vertex>(n4.begin(), n4.end()) == std::vector<Vertex>{1, 2, 3});
}

TEST_CASE("same seed reproduces the edge list, different seeds diverge") {
  const auto a = generate({500, 77});
  const auto b = generate({500, 77});
  const auto c = generate({500, 78});
  CHECK(std::equal(a.graph.edges().begin(), a.graph.edges().end(), b.graph.edges().begin(), b.graph.edges().end()));
  CHECK_FALSE(
      std::equal(a.graph.edges().begin(), a.graph.edges().end(), c.graph.edges().begin(), c.graph.edges().end()));
}

TEST_CASE("face count goes 1, 3, 5, ...") {
  Generator gen({0, 3});
  CHECK(gen.faces().count() == 1);
  for (std::uint64_t s = 1; s <= 20; ++s) {
    const auto rec = gen.step();
    CHECK(rec.new_vertex == s + 3);
    CHECK(gen.faces().count() == 2 * s + 1);
    CHECK(gen.degree(rec.new_vertex) == 3);
  }
}

TEST_CASE("edges are appended in creation order") {
  const auto g = generate({200, 4});
  const auto edges = g.graph.edges();
  CHECK(edges[0] == Edge{1, 2});
  CHECK(edges[1] == Edge{1, 3});
  CHECK(edges[2] == Edge{2, 3});
  for (std::uint64_t j = 1; j <= 200; ++j) {
    const auto v = static_cast<Vertex>(j + 3);
    for (int i = 0; i < 3; ++i) CHECK(edges[3 * j + i].second == v);
    CHECK(edges[3 * j].first < edges[3 * j + 1].first);
    CHECK(edges[3 * j + 1].first < edges[3 * j + 2].first);
    CHECK(g.graph.insertion_step(v) == j);
  }
}

TEST_CASE("degree rejects labels outside 1..n") {
  const auto g = generate({2, 1});
  CHECK_THROWS_AS((void)g.graph.degree(0), std::out_of_range);
  CHECK_THROWS_AS((void)g.graph.degree(6), std::out_of_range);
  CHECK_NOTHROW((void)g.graph.degree(5));
}

TEST_CASE("active faces are triangles and match the genealogy leaves") {
  const auto g = generate({300, 8});
  std::multiset<std::array<Vertex, 3>> from_store, from_tree;
  for (const auto& f : g.faces.active()) {
    CHECK(g.graph.adjacent(f.v[0], f.v[1]));
    CHECK(g.graph.adjacent(f.v[1], f.v[2]));
    CHECK(g.graph.adjacent(f.v[0], f.v[2]));
    from_store.insert(sorted_face(f.v));
    CHECK(g.genealogy[f.node].is_leaf());
    CHECK(g.genealogy[f.node].depth == f.depth);
  }
  for (const auto& node : g.genealogy.nodes())
    if (node.is_leaf()) from_tree.insert(sorted_face(node.face));
  CHECK(from_store == from_tree);
  CHECK(std::set<std::array<Vertex, 3>>(from_store.begin(), from_store.end()).size() == from_store.size());
}

TEST_CASE("every vertex lies in as many active faces as its degree, except the outer corners") {
  const auto g = generate({150, 21});
  std::vector<std::uint32_t> faces_at(g.graph.n() + 1, 0);
  for (const auto& f : g.faces.active())
    for (Vertex v : f.v) ++faces_at[v];
  for (Vertex v = 4; v <= g.graph.n(); ++v) CHECK(faces_at[v] == g.graph.degree(v));
  for (Vertex v = 1; v <= 3; ++v) CHECK(faces_at[v] == g.graph.degree(v) - 1);
}

TEST_CASE("step_at rejects an inactive index") {
  Generator gen({0, 1});
  CHECK_THROWS_AS(gen.step_at(1), std::out_of_range);
  gen.step_at(0);
  CHECK_THROWS_AS(gen.step_at(3), std::out_of_range);
}

TEST_CASE("step_at keeps untouched slots in place") {
  Generator gen({0, 1});
  gen.step_at(0);
  const Face second = gen.faces()[1];
  const Face third = gen.faces()[2];
  gen.step_at(0);
  CHECK(gen.faces()[1].v == second.v);
  CHECK(gen.faces()[2].v == third.v);
  CHECK(gen.faces()[0].contains(5));
  CHECK(gen.faces()[3].contains(5));
  CHECK(gen.faces()[4].contains(5));
}

TEST_CASE("memory budget is enforced before allocation") {
  GeneratorConfig config{1000000, 1, 1 << 20};
  CHECK_THROWS_AS(generate(config), ResourceError);
  config.memory_limit = kDefaultMemoryLimit;
  CHECK(estimate_generation_bytes(1000000) < (1ULL << 30));
}

TEST_CASE("uniform_below is unbiased for small bounds") {
  Engine rng(42);
  CHECK(uniform_below(rng, 1) == 0);
  constexpr std::uint64_t draws = 300000;
  for (std::uint64_t bound : {3, 5, 7}) {
    std::vector<std::uint64_t> hits(bound, 0);
    for (std::uint64_t i = 0; i < draws; ++i) ++hits[uniform_below(rng, bound)];
    const double p = 1.0 / static_cast<double>(bound);
    const double sigma = std::sqrt(p * (1 - p) / draws);
    for (auto h : hits) CHECK(std::abs(static_cast<double>(h) / draws - p) <= 4 * sigma);
  }
}

TEST_CASE("derived seeds are distinct across indices") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 10000; ++i) seen.insert(derive_seed(1, i));
  CHECK(seen.size() == 10000);
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
}

TEST_CASE("reset returns to the triangle") {
  Generator gen({0, 1});
  gen.run(10);
  gen.reset(9);
  CHECK(gen.t() == 0);
  CHECK(gen.faces().count() == 1);
  CHECK(gen.edges().size() == 3);
  gen.run(10);
  const auto fresh = generate({10, 9});
  CHECK(std::equal(gen.edges().begin(), gen.edges().end(), fresh.graph.edges().begin(), fresh.graph.edges().end()));
}
