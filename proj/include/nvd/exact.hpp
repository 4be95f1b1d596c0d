#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "nvd/graph.hpp"

namespace nvd {

inline constexpr NodeId kDefaultDenseCap = 20000;

// Row-major dense square matrix.
struct DenseMatrix {
  NodeId n = 0;
  std::vector<double> data;

  double operator()(NodeId i, NodeId j) const {
    return data[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + j];
  }
  Vector multiply(std::span<const double> x) const;
};

// Moore-Penrose pseudoinverse of the graph Laplacian through a symmetric
// eigendecomposition. The smallest eigenvalue of every connected component
// is dropped as the kernel, as is anything at or below n * eps * lambda_max.
//
// Throws std::length_error when n exceeds `cap`: the dense path needs
// O(n^2) memory and O(n^3) time.
DenseMatrix pinv_laplacian(const Graph& g, NodeId cap = kDefaultDenseCap);

// sqrt((a - b)^T L^+ (a - b)), with round-off negatives clamped to zero.
double ge_distance_exact(const Graph& g, std::span<const double> a,
                         std::span<const double> b,
                         NodeId cap = kDefaultDenseCap);

// Number of n x n matrices materialised by this module since process start.
// Lets tests assert that the sparse solver paths never densify.
std::uint64_t dense_allocation_count();

}  // namespace nvd
