#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ran/rng.hpp"

namespace ran {

/// Vertex label. Labels start at 1; 1, 2 and 3 are the initial triangle and
/// the vertex inserted at step j is labelled j + 3.
using Vertex = std::uint32_t;

inline constexpr std::uint32_t kNoNode = 0xffffffffu;
inline constexpr std::uint64_t kDefaultMemoryLimit = 8ULL << 30;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a requested generation would exceed the memory budget.
class ResourceError : public Error {
 public:
  using Error::Error;
};

struct GeneratorConfig {
  std::uint64_t t_max = 0;
  std::uint64_t seed = 0;
  std::uint64_t memory_limit = kDefaultMemoryLimit;
};

struct Face {
  std::array<Vertex, 3> v{};
  std::uint32_t depth = 1;
  std::uint32_t node = kNoNode;

  bool contains(Vertex x) const noexcept { return v[0] == x || v[1] == x || v[2] == x; }
};

/// The active (subdividable) faces, stored contiguously so that a uniform
/// index is a uniform face. Subdividing face i writes its first child into
/// slot i and appends the other two, so slots of untouched faces never move.
class FaceStore {
 public:
  std::span<const Face> active() const noexcept { return faces_; }
  std::size_t count() const noexcept { return faces_.size(); }
  const Face& operator[](std::size_t i) const { return faces_[i]; }

 private:
  friend class Generator;
  std::vector<Face> faces_;
};

struct GenealogyNode {
  std::array<Vertex, 3> face{};
  std::uint32_t depth = 1;
  std::uint32_t parent = kNoNode;
  /// Children occupy ids first_child, first_child + 1, first_child + 2.
  std::uint32_t first_child = kNoNode;

  bool is_leaf() const noexcept { return first_child == kNoNode; }
};

/// Ternary tree of face subdivisions. Node 0 is the initial face; leaves are
/// exactly the active faces.
class FaceGenealogy {
 public:
  std::span<const GenealogyNode> nodes() const noexcept { return nodes_; }
  const GenealogyNode& operator[](std::uint32_t id) const { return nodes_[id]; }
  std::size_t size() const noexcept { return nodes_.size(); }
  std::size_t internal_count() const noexcept { return internal_; }
  std::size_t leaf_count() const noexcept { return nodes_.size() - internal_; }
  bool empty() const noexcept { return nodes_.empty(); }

 private:
  friend class Generator;
  std::vector<GenealogyNode> nodes_;
  std::size_t internal_ = 0;
};

using Edge = std::pair<Vertex, Vertex>;

/// Immutable graph produced by generation (or read back from disk).
///
/// Edges are kept in creation order: the initial triangle as (1,2), (1,3),
/// (2,3), then for every step the three edges to the new vertex, ordered by
/// the smaller endpoint. Adjacency is CSR with ascending neighbor lists.
class RanGraph {
 public:
  RanGraph() = default;
  RanGraph(std::uint64_t t, std::optional<std::uint64_t> seed, std::vector<Edge> edges);

  std::uint64_t t() const noexcept { return t_; }
  std::optional<std::uint64_t> seed() const noexcept { return seed_; }
  std::size_t n() const noexcept { return static_cast<std::size_t>(t_) + 3; }
  std::size_t m() const noexcept { return edges_.size(); }

  /// Throws std::out_of_range unless 1 <= v <= n.
  std::uint32_t degree(Vertex v) const;
  std::span<const Vertex> neighbors(Vertex v) const;
  bool adjacent(Vertex u, Vertex v) const;
  std::uint64_t insertion_step(Vertex v) const;

  std::span<const Edge> edges() const noexcept { return edges_; }
  std::vector<std::uint32_t> degrees() const;

  /// Unchecked fast paths for traversal loops (0 < v <= n).
  std::span<const Vertex> neighbors_unchecked(Vertex v) const noexcept {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }

 private:
  void check_vertex(Vertex v) const;

  std::uint64_t t_ = 0;
  std::optional<std::uint64_t> seed_;
  std::vector<Edge> edges_;
  std::vector<std::uint64_t> offsets_;  // indexed by label, size n + 2
  std::vector<Vertex> adjacency_;
};

struct InsertionRecord {
  Face chosen_face;
  std::size_t face_index = 0;
  Vertex new_vertex = 0;
};

/// Picks the index of the face to subdivide, given the active-face count.
using FaceSampler = std::function<std::size_t(Engine&, std::size_t)>;

/// What the generator materializes beyond the face store and degree table.
struct Tracking {
  bool edges = true;
  bool genealogy = true;
};

struct Generated;

/// Incremental generator. Copyable, so exhaustive enumeration can branch.
class Generator {
 public:
  explicit Generator(const GeneratorConfig& config, Tracking tracking = {});

  /// Returns to the initial triangle with a new seed, keeping allocations.
  void reset(std::uint64_t seed);

  InsertionRecord step();
  InsertionRecord step_at(std::size_t face_index);
  void run(std::uint64_t steps);

  void set_sampler(FaceSampler sampler) { sampler_ = std::move(sampler); }

  std::uint64_t t() const noexcept { return t_; }
  std::uint64_t seed() const noexcept { return seed_; }
  std::size_t n() const noexcept { return static_cast<std::size_t>(t_) + 3; }
  std::size_t m() const noexcept { return 3 * static_cast<std::size_t>(t_) + 3; }
  std::uint32_t degree(Vertex v) const { return degrees_.at(v); }
  std::span<const std::uint32_t> degree_table() const noexcept { return degrees_; }

  const FaceStore& faces() const noexcept { return faces_; }
  const FaceGenealogy& genealogy() const noexcept { return genealogy_; }
  std::span<const Edge> edges() const noexcept { return edges_; }
  Engine& engine() noexcept { return engine_; }

  /// Builds the immutable graph. Requires edge tracking.
  RanGraph graph() const;

  /// Moves the graph, face store and genealogy out; the generator is left
  /// in the initial state.
  Generated finish() &&;

  void reserve(std::uint64_t steps);

 private:
  void initialize();

  Tracking tracking_;
  std::uint64_t seed_ = 0;
  std::uint64_t t_ = 0;
  Engine engine_;
  FaceSampler sampler_;
  FaceStore faces_;
  FaceGenealogy genealogy_;
  std::vector<std::uint32_t> degrees_;  // indexed by label; slot 0 unused
  std::vector<Edge> edges_;
};

struct Generated {
  RanGraph graph;
  FaceStore faces;
  FaceGenealogy genealogy;
};

/// Upper estimate of peak bytes used by generate() for t_max steps.
std::uint64_t estimate_generation_bytes(std::uint64_t t_max);

/// RAN_MEM_LIMIT in bytes, or kDefaultMemoryLimit when unset.
std::uint64_t memory_limit_from_env();

/// Runs t_max steps from the initial triangle. Throws ResourceError if the
/// estimate exceeds config.memory_limit.
Generated generate(const GeneratorConfig& config);

std::uint64_t degree_sum(const RanGraph& graph);

}  // namespace ran
