#include "nvd/exact.hpp"

#include <cblas.h>
#include <lapacke.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace nvd {
namespace {

std::atomic<std::uint64_t> g_dense_allocations{0};

void check_lengths(const Graph& g, std::span<const double> a,
                   std::span<const double> b) {
  const auto n = static_cast<std::size_t>(g.num_nodes());
  if (a.size() != n || b.size() != n) {
    throw std::invalid_argument("node vector length does not match node count " +
                                std::to_string(n));
  }
}

}  // namespace

Vector DenseMatrix::multiply(std::span<const double> x) const {
  if (x.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("dense multiply: length mismatch");
  }
  Vector y(x.size(), 0.0);
  if (n == 0) return y;
  cblas_dgemv(CblasRowMajor, CblasNoTrans, n, n, 1.0, data.data(), n, x.data(),
              1, 0.0, y.data(), 1);
  return y;
}

DenseMatrix pinv_laplacian(const Graph& g, NodeId cap) {
  const NodeId n = g.num_nodes();
  if (n > cap) {
    throw std::length_error("dense pseudoinverse refused: " + std::to_string(n) +
                            " nodes exceeds the cap of " + std::to_string(cap));
  }
  const auto nn = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  g_dense_allocations.fetch_add(2, std::memory_order_relaxed);

  DenseMatrix out{n, std::vector<double>(nn, 0.0)};
  auto at = [n](NodeId i, NodeId j) {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + j;
  };
  const Vector deg = g.weighted_degrees();
  for (NodeId u = 0; u < n; ++u) {
    out.data[at(u, u)] = deg[u];
    auto nbrs = g.neighbors(u);
    auto ws = g.weights(u);
    for (std::size_t k = 0; k < nbrs.size(); ++k) out.data[at(u, nbrs[k])] = -ws[k];
  }

  // L is symmetric, so column-major storage is the same array and LAPACKE
  // does not need transposed copies; eigenvector j is column j of `vecs`.
  std::vector<double> eigvals(static_cast<std::size_t>(n));
  std::vector<double> vecs(nn);
  std::vector<lapack_int> support(2 * static_cast<std::size_t>(n));
  lapack_int found = 0;
  const lapack_int info = LAPACKE_dsyevr(
      LAPACK_COL_MAJOR, 'V', 'A', 'L', n, out.data.data(), n, 0.0, 0.0, 0, 0,
      0.0, &found, eigvals.data(), vecs.data(), n, support.data());
  if (info != 0) {
    throw std::runtime_error("dsyevr failed with info = " + std::to_string(info));
  }

  // Eigenvalues come back ascending; the kept ones form a trailing block.
  // The kernel has exactly one dimension per component, so those are dropped
  // outright; a round-off zero can sit above any relative threshold.
  const double lambda_max = std::max(eigvals.back(), 0.0);
  const double cutoff =
      static_cast<double>(n) * std::numeric_limits<double>::epsilon() * lambda_max;
  NodeId first = connected_components(g).count;
  while (first < n && eigvals[first] <= cutoff) ++first;
  for (NodeId j = first; j < n; ++j) {
    const double scale = 1.0 / std::sqrt(eigvals[j]);
    double* col = vecs.data() + at(j, 0);
    for (NodeId i = 0; i < n; ++i) col[i] *= scale;
  }

  // L^+ = V_k diag(1/lambda) V_k^T, written into the lower triangle.
  std::fill(out.data.begin(), out.data.end(), 0.0);
  const NodeId rank = n - first;
  if (rank > 0) {
    cblas_dsyrk(CblasColMajor, CblasLower, CblasNoTrans, n, rank, 1.0,
                vecs.data() + at(first, 0), n, 0.0, out.data.data(), n);
  }
  vecs = {};
  // Column-major lower triangle: entry (i, j), i > j, lives at at(j, i).
  for (NodeId j = 0; j < n; ++j) {
    for (NodeId i = j + 1; i < n; ++i) out.data[at(i, j)] = out.data[at(j, i)];
  }
  return out;
}

double ge_distance_exact(const Graph& g, std::span<const double> a,
                         std::span<const double> b, NodeId cap) {
  check_lengths(g, a, b);
  Vector y(a.size());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = a[i] - b[i];
  const DenseMatrix pinv = pinv_laplacian(g, cap);
  const Vector py = pinv.multiply(y);
  double q = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) q += y[i] * py[i];
  return std::sqrt(std::max(q, 0.0));
}

std::uint64_t dense_allocation_count() {
  return g_dense_allocations.load(std::memory_order_relaxed);
}

}  // namespace nvd
