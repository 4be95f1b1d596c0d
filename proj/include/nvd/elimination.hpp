#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "nvd/graph.hpp"
#include "nvd/solver.hpp"
#include "nvd/spanning_tree.hpp"

namespace nvd {

// Unit lower-triangular factor with diagonal pivots, L D L^T, produced by
// eliminating Laplacian vertices one at a time. Column j belongs to pivot
// vertex pivots[j]; its off-diagonal entries are stored as fractions
// f = w_uv / d_v so that l_uv = -f.
class LaplacianFactor {
 public:
  NodeId num_nodes() const { return n_; }
  std::size_t nnz() const { return rows_.size(); }
  std::span<const NodeId> pivots() const { return pivots_; }
  std::span<const double> diagonal() const { return diag_; }

  // y <- L^{-T} D^+ L^{-1} y. Zero pivots (one per component) are skipped,
  // so for zero-sum input this is the exact pseudo-solve of the factored
  // Laplacian.
  void solve_inplace(std::span<double> y) const;

 private:
  friend class Eliminator;

  NodeId n_ = 0;
  std::vector<NodeId> pivots_;
  std::vector<double> diag_;
  std::vector<std::int64_t> col_ptr_{0};
  std::vector<NodeId> rows_;
  std::vector<double> fractions_;
};

enum class CliqueMode {
  Exact,    // insert the full Schur-complement clique
  Sampled,  // insert a random spanning tree of the clique, unbiased in expectation
};

// Gaussian elimination of the Laplacian of g. In Sampled mode, eliminating
// a vertex with merged neighbours u_1..u_k sorted by weight w_1 <= .. <= w_k
// (total W) adds, for every i < k, one edge (u_i, u_j) with j > i drawn with
// probability w_j / sum_{l>i} w_l and weight w_i * sum_{l>i} w_l / W. Its
// expectation is the exact clique w_i w_j / W, and the number of stored
// edges never grows.
LaplacianFactor eliminate(const Graph& g, CliqueMode mode,
                          EliminationOrder order, std::uint64_t seed);

// Preconditioner z = P L^{-T} D^+ L^{-1} P r for a factor of g.
class FactorPreconditioner final : public Preconditioner {
 public:
  FactorPreconditioner(LaplacianFactor factor, ComponentLabeling comps);
  using Preconditioner::apply;
  void apply(std::span<const double> r, std::span<double> z) const override;
  const LaplacianFactor& factor() const { return factor_; }

 private:
  LaplacianFactor factor_;
  ComponentLabeling comps_;
};

// Randomised approximate Cholesky factorisation used as a PCG
// preconditioner. Exact whenever no eliminated vertex has more than two
// live neighbours, e.g. on trees and cycles.
std::unique_ptr<FactorPreconditioner> approx_chol_factor(const Graph& g,
                                                         const SolverConfig& cfg);

std::int64_t default_aug_tree_extra(NodeId n);

// t plus `extra` off-tree edges of g drawn without replacement with
// probability proportional to weight (Efraimidis-Spirakis keys).
Graph augmented_tree_graph(const Graph& g, const SpanningTree& t,
                           std::int64_t extra, std::uint64_t seed);

// Exact solver for the augmented tree: minimum-degree elimination removes
// the tree part in linear time, leaving only a core spanned by the off-tree
// endpoints to be factored with fill.
std::unique_ptr<FactorPreconditioner> build_aug_tree_precond(
    const Graph& g, const SpanningTree& t, std::int64_t extra,
    std::uint64_t seed);

}  // namespace nvd
