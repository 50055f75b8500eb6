#include "ran/generator.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <string>

namespace ran {

namespace {

constexpr std::uint64_t kMaxSteps = std::numeric_limits<Vertex>::max() - 8;

std::array<Vertex, 3> sorted(std::array<Vertex, 3> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------
// RanGraph

RanGraph::RanGraph(std::uint64_t t, std::optional<std::uint64_t> seed, std::vector<Edge> edges)
    : t_(t), seed_(seed), edges_(std::move(edges)) {
  const std::size_t n = this->n();
  offsets_.assign(n + 2, 0);
  for (const auto& [u, v] : edges_) {
    if (u == 0 || v == 0 || u > n || v > n || u == v) {
      throw Error("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                  ") is out of range for n = " + std::to_string(n));
    }
    ++offsets_[u + 1];
    ++offsets_[v + 1];
  }
  for (std::size_t i = 1; i < offsets_.size(); ++i) offsets_[i] += offsets_[i - 1];
  adjacency_.resize(2 * edges_.size());
  std::vector<std::uint64_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const auto& [u, v] : edges_) {
    adjacency_[cursor[u]++] = v;
    adjacency_[cursor[v]++] = u;
  }
  for (Vertex v = 1; v <= n; ++v) {
    auto first = adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]);
    auto last = adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]);
    std::sort(first, last);
  }
}

void RanGraph::check_vertex(Vertex v) const {
  if (v == 0 || v > n()) {
    throw std::out_of_range("vertex " + std::to_string(v) + " outside 1.." + std::to_string(n()));
  }
}

std::uint32_t RanGraph::degree(Vertex v) const {
  check_vertex(v);
  return static_cast<std::uint32_t>(offsets_[v + 1] - offsets_[v]);
}

std::span<const Vertex> RanGraph::neighbors(Vertex v) const {
  check_vertex(v);
  return neighbors_unchecked(v);
}

bool RanGraph::adjacent(Vertex u, Vertex v) const {
  const auto nu = neighbors(u);
  check_vertex(v);
  return std::binary_search(nu.begin(), nu.end(), v);
}

std::uint64_t RanGraph::insertion_step(Vertex v) const {
  check_vertex(v);
  return v <= 3 ? 0 : v - 3;
}

std::vector<std::uint32_t> RanGraph::degrees() const {
  std::vector<std::uint32_t> out(n() + 1, 0);
  for (Vertex v = 1; v <= n(); ++v) out[v] = static_cast<std::uint32_t>(offsets_[v + 1] - offsets_[v]);
  return out;
}

std::uint64_t degree_sum(const RanGraph& graph) {
  std::uint64_t sum = 0;
  for (Vertex v = 1; v <= graph.n(); ++v) sum += graph.degree(v);
  return sum;
}

// ---------------------------------------------------------------------------
// Generator

Generator::Generator(const GeneratorConfig& config, Tracking tracking)
    : tracking_(tracking), seed_(config.seed), engine_(config.seed) {
  initialize();
}

void Generator::initialize() {
  t_ = 0;
  faces_.faces_.clear();
  genealogy_.nodes_.clear();
  genealogy_.internal_ = 0;
  degrees_.assign(4, 2);
  degrees_[0] = 0;
  edges_.clear();

  Face root{{1, 2, 3}, 1, kNoNode};
  if (tracking_.genealogy) {
    root.node = 0;
    genealogy_.nodes_.push_back({root.v, 1, kNoNode, kNoNode});
  }
  faces_.faces_.push_back(root);
  if (tracking_.edges) {
    edges_.insert(edges_.end(), {{1, 2}, {1, 3}, {2, 3}});
  }
}

void Generator::reset(std::uint64_t seed) {
  seed_ = seed;
  engine_.seed(seed);
  initialize();
}

void Generator::reserve(std::uint64_t steps) {
  const auto total = t_ + steps;
  faces_.faces_.reserve(2 * total + 1);
  degrees_.reserve(total + 4);
  if (tracking_.genealogy) genealogy_.nodes_.reserve(3 * total + 1);
  if (tracking_.edges) edges_.reserve(3 * total + 3);
}

InsertionRecord Generator::step() {
  const std::size_t count = faces_.count();
  const std::size_t index =
      sampler_ ? sampler_(engine_, count) : static_cast<std::size_t>(uniform_below(engine_, count));
  return step_at(index);
}

InsertionRecord Generator::step_at(std::size_t face_index) {
  if (face_index >= faces_.count()) {
    throw std::out_of_range("face index " + std::to_string(face_index) + " with " +
                            std::to_string(faces_.count()) + " active faces");
  }
  if (t_ >= kMaxSteps) throw ResourceError("vertex label space exhausted");

  const Face parent = faces_.faces_[face_index];
  const auto v = static_cast<Vertex>(t_ + 4);
  ++t_;

  for (Vertex x : parent.v) ++degrees_[x];
  degrees_.push_back(3);

  if (tracking_.edges) {
    for (Vertex x : sorted(parent.v)) edges_.emplace_back(x, v);
  }

  const std::uint32_t depth = parent.depth + 1;
  std::array<Face, 3> children;
  for (int i = 0; i < 3; ++i) {
    children[i].v = parent.v;
    children[i].v[i] = v;
    children[i].depth = depth;
  }
  if (tracking_.genealogy) {
    const auto first = static_cast<std::uint32_t>(genealogy_.nodes_.size());
    genealogy_.nodes_[parent.node].first_child = first;
    ++genealogy_.internal_;
    for (std::uint32_t i = 0; i < 3; ++i) {
      children[i].node = first + i;
      genealogy_.nodes_.push_back({children[i].v, depth, parent.node, kNoNode});
    }
  }
  faces_.faces_[face_index] = children[0];
  faces_.faces_.push_back(children[1]);
  faces_.faces_.push_back(children[2]);

  return {parent, face_index, v};
}

void Generator::run(std::uint64_t steps) {
  for (std::uint64_t i = 0; i < steps; ++i) step();
}

RanGraph Generator::graph() const {
  if (!tracking_.edges) throw Error("generator was created without edge tracking");
  return RanGraph(t_, seed_, edges_);
}

Generated Generator::finish() && {
  if (!tracking_.edges) throw Error("generator was created without edge tracking");
  Generated out{RanGraph(t_, seed_, std::move(edges_)), std::move(faces_), std::move(genealogy_)};
  initialize();
  return out;
}

// ---------------------------------------------------------------------------

std::uint64_t estimate_generation_bytes(std::uint64_t t_max) {
  // Per step: 3 edges, 2 net faces, 3 genealogy nodes, a degree slot and the
  // CSR built at the end (offset plus six adjacency entries).
  constexpr std::uint64_t per_step = 3 * sizeof(Edge) + 2 * sizeof(Face) + 3 * sizeof(GenealogyNode) +
                                     sizeof(std::uint32_t) + sizeof(std::uint64_t) * 2 +
                                     6 * sizeof(Vertex);
  constexpr std::uint64_t fixed = 1 << 16;
  if (t_max > (std::numeric_limits<std::uint64_t>::max() - fixed) / per_step) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return fixed + per_step * t_max;
}

std::uint64_t memory_limit_from_env() {
  const char* raw = std::getenv("RAN_MEM_LIMIT");
  if (raw == nullptr || *raw == '\0') return kDefaultMemoryLimit;
  char* end = nullptr;
  const unsigned long long value = std::strtoull(raw, &end, 10);
  if (end == raw || *end != '\0') {
    throw Error(std::string("RAN_MEM_LIMIT is not a byte count: ") + raw);
  }
  return value;
}

Generated generate(const GeneratorConfig& config) {
  if (config.t_max >= kMaxSteps) {
    throw ResourceError("t_max " + std::to_string(config.t_max) + " exceeds the 32-bit label space");
  }
  const std::uint64_t need = estimate_generation_bytes(config.t_max);
  if (need > config.memory_limit) {
    throw ResourceError("t_max " + std::to_string(config.t_max) + " needs about " + std::to_string(need) +
                        " bytes, over the memory limit of " + std::to_string(config.memory_limit));
  }
  Generator gen(config);
  gen.reserve(config.t_max);
  gen.run(config.t_max);
  return std::move(gen).finish();
}

}  // namespace ran
