#include "ran/lanczos.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ran {

SparseSymmetric::SparseSymmetric(std::size_t n, std::span<const Edge> edges) : n_(n) {
  offsets_.assign(n + 1, 0);
  for (const auto& [u, v] : edges) {
    if (u == 0 || v == 0 || u > n || v > n) throw std::out_of_range("edge outside matrix dimension");
    ++offsets_[u];
    ++offsets_[v];
  }
  for (std::size_t i = 1; i <= n; ++i) offsets_[i] += offsets_[i - 1];
  cols_.resize(offsets_[n]);
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const auto& [u, v] : edges) {
    cols_[cursor[u - 1]++] = v - 1;
    cols_[cursor[v - 1]++] = u - 1;
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::sort(cols_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]),
              cols_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]));
  }
}

SparseSymmetric SparseSymmetric::adjacency(const RanGraph& graph) {
  return SparseSymmetric(graph.n(), graph.edges());
}

void SparseSymmetric::apply(std::span<const double> x, std::span<double> y) const {
  for (std::size_t i = 0; i < n_; ++i) {
    double sum = 0.0;
    for (std::size_t p = offsets_[i]; p < offsets_[i + 1]; ++p) sum += x[cols_[p]];
    y[i] = sum;
  }
}

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

void apply(const SparseSymmetric& a, const VectorXd& x, VectorXd& y) {
  a.apply({x.data(), static_cast<std::size_t>(x.size())}, {y.data(), static_cast<std::size_t>(y.size())});
}

VectorXd random_unit(std::size_t n, Engine& engine) {
  VectorXd v(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = uniform_unit(engine) - 0.5;
  v.normalize();
  return v;
}

// Two passes of classical Gram-Schmidt against the first `cols` columns.
VectorXd orthogonalize(const MatrixXd& basis, Eigen::Index cols, VectorXd& w) {
  VectorXd h = VectorXd::Zero(cols);
  for (int pass = 0; pass < 2; ++pass) {
    const VectorXd c = basis.leftCols(cols).transpose() * w;
    w.noalias() -= basis.leftCols(cols) * c;
    h += c;
  }
  return h;
}

}  // namespace

LanczosResult lanczos_largest(const SparseSymmetric& matrix, const LanczosOptions& options) {
  const std::size_t n = matrix.size();
  if (options.k == 0 || options.k > n) throw std::invalid_argument("k must lie in 1..n");
  if (!(options.tol > 0.0)) throw std::invalid_argument("tol must be positive");

  const auto k = static_cast<Eigen::Index>(options.k);
  std::size_t basis = options.basis_size ? options.basis_size : std::max<std::size_t>(3 * options.k + 20, 40);
  const auto m = static_cast<Eigen::Index>(std::min(basis, n));
  const std::size_t max_matvecs = options.max_iterations_per_value * options.k;

  Engine engine(options.start_seed);
  MatrixXd v(static_cast<Eigen::Index>(n), m + 1);
  MatrixXd t = MatrixXd::Zero(m, m);
  v.col(0) = random_unit(n, engine);

  LanczosResult result;
  result.iterations.assign(options.k, 0);
  VectorXd w(static_cast<Eigen::Index>(n));
  VectorXd best_values = VectorXd::Zero(k);
  VectorXd best_residuals = VectorXd::Constant(k, std::numeric_limits<double>::infinity());

  Eigen::Index start = 0;
  double norm_estimate = 1.0;
  while (true) {
    Eigen::Index filled = m;
    double beta = 0.0;
    for (Eigen::Index j = start; j < m; ++j) {
      apply(matrix, v.col(j), w);
      ++result.matvecs;
      const VectorXd h = orthogonalize(v, j + 1, w);
      for (Eigen::Index i = 0; i <= j; ++i) t(i, j) = t(j, i) = h[i];
      norm_estimate = std::max(norm_estimate, std::abs(h[j]));
      beta = w.norm();
      if (beta <= 1e-12 * norm_estimate) {
        beta = 0.0;
        if (j + 1 == static_cast<Eigen::Index>(n)) {
          filled = j + 1;
          break;
        }
        // Invariant subspace: continue from a fresh direction.
        VectorXd fresh = random_unit(n, engine);
        orthogonalize(v, j + 1, fresh);
        fresh.normalize();
        v.col(j + 1) = fresh;
      } else {
        v.col(j + 1) = w / beta;
      }
      if (j + 1 < m) t(j + 1, j) = t(j, j + 1) = beta;
    }

    Eigen::SelfAdjointEigenSolver<MatrixXd> eig(t.topLeftCorner(filled, filled));
    const VectorXd& theta = eig.eigenvalues();
    const MatrixXd& y = eig.eigenvectors();
    const Eigen::Index wanted = std::min<Eigen::Index>(k, filled);

    bool all_small = true;
    for (Eigen::Index i = 0; i < wanted; ++i) {
      const Eigen::Index col = filled - 1 - i;
      const double estimate = std::abs(beta * y(filled - 1, col));
      if (estimate <= options.tol && result.iterations[i] == 0) result.iterations[i] = result.matvecs;
      if (estimate > options.tol) all_small = false;
    }

    const bool out_of_budget = result.matvecs >= max_matvecs;
    if (all_small || out_of_budget) {
      // Confirm with explicit residuals of the Ritz vectors.
      bool confirmed = true;
      VectorXd x, ax(static_cast<Eigen::Index>(n));
      for (Eigen::Index i = 0; i < wanted; ++i) {
        const Eigen::Index col = filled - 1 - i;
        x = v.leftCols(filled) * y.col(col);
        const double xnorm = x.norm();
        apply(matrix, x, ax);
        ++result.matvecs;
        const double lambda = x.dot(ax) / (xnorm * xnorm);
        best_values[i] = lambda;
        best_residuals[i] = (ax - lambda * x).norm() / xnorm;
        if (best_residuals[i] > options.tol) confirmed = false;
      }
      if (confirmed || out_of_budget || filled < m) {
        result.converged = confirmed;
        break;
      }
    }

    // Thick restart: keep the leading Ritz vectors and the residual direction.
    const Eigen::Index keep = std::min<Eigen::Index>(m - 2, std::max<Eigen::Index>(k + 4, (m + k) / 2));
    const MatrixXd ritz = v.leftCols(m) * y.rightCols(keep);
    const VectorXd residual_dir = v.col(m);
    v.leftCols(keep) = ritz;
    v.col(keep) = residual_dir;
    t.setZero();
    for (Eigen::Index i = 0; i < keep; ++i) {
      const Eigen::Index col = m - keep + i;
      t(i, i) = theta[col];
      t(i, keep) = t(keep, i) = beta * y(m - 1, col);
    }
    start = keep;
  }

  result.values.assign(best_values.data(), best_values.data() + k);
  result.residuals.assign(best_residuals.data(), best_residuals.data() + k);
  for (std::size_t i = 0; i < result.iterations.size(); ++i) {
    if (result.iterations[i] == 0) result.iterations[i] = result.matvecs;
  }
  return result;
}

}  // namespace ran
