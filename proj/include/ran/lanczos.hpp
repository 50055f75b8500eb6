#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ran/generator.hpp"

namespace ran {

/// Symmetric 0/1 matrix in CSR form over 0-based indices.
class SparseSymmetric {
 public:
  SparseSymmetric() = default;
  /// Builds from an edge list over labels 1..n (label v maps to row v - 1).
  SparseSymmetric(std::size_t n, std::span<const Edge> edges);
  static SparseSymmetric adjacency(const RanGraph& graph);

  std::size_t size() const noexcept { return n_; }
  std::size_t nonzeros() const noexcept { return cols_.size(); }
  void apply(std::span<const double> x, std::span<double> y) const;

 private:
  std::size_t n_ = 0;
  std::vector<std::size_t> offsets_;
  std::vector<std::uint32_t> cols_;
};

struct LanczosOptions {
  std::size_t k = 1;
  /// Convergence when ||A x - theta x|| / ||x|| <= tol for each wanted pair.
  double tol = 1e-8;
  std::size_t max_iterations_per_value = 10000;
  /// Krylov basis size; 0 picks max(3k + 20, 40), capped at the dimension.
  std::size_t basis_size = 0;
  std::uint64_t start_seed = 0x5eed5eedULL;
};

struct LanczosResult {
  std::vector<double> values;      // descending
  std::vector<double> residuals;   // true residual norms for unit Ritz vectors
  std::vector<std::size_t> iterations;  // matvecs until each pair converged
  std::size_t matvecs = 0;
  bool converged = false;
};

/// Largest k eigenvalues of a symmetric operator by thick-restart Lanczos
/// with full reorthogonalization. Converged Ritz pairs stay in the restart
/// basis with vanishing coupling, which locks (deflates) them.
LanczosResult lanczos_largest(const SparseSymmetric& matrix, const LanczosOptions& options);

}  // namespace ran
