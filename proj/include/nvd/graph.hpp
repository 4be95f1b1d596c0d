#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace nvd {

using NodeId = std::int32_t;
using Vector = std::vector<double>;

struct Edge {
  NodeId u;
  NodeId v;
  double w = 1.0;
};

// Per-node connected component ids. Component ids are dense and assigned in
// order of each component's smallest node id.
struct ComponentLabeling {
  std::vector<NodeId> label;
  NodeId count = 0;
  std::vector<NodeId> sizes;
};

// Immutable undirected weighted graph in compressed adjacency form.
//
// Every undirected edge {u, v} is stored twice, once in each endpoint's
// neighbor list. Neighbor lists are sorted and duplicate-free, there are no
// self-loops and all weights are strictly positive.
class Graph {
 public:
  Graph() = default;

  // Duplicate (u, v) pairs are merged by summing their weights and
  // self-loops are dropped. Throws std::out_of_range naming the first edge
  // with an endpoint outside [0, n), std::invalid_argument on n < 1 or a
  // non-positive / non-finite weight.
  static Graph build(NodeId n, std::span<const Edge> edges);

  NodeId num_nodes() const { return n_; }
  std::int64_t num_edges() const { return m_; }

  std::span<const NodeId> neighbors(NodeId u) const {
    return {neighbors_.data() + offsets_[u],
            static_cast<std::size_t>(offsets_[u + 1] - offsets_[u])};
  }
  std::span<const double> weights(NodeId u) const {
    return {weights_.data() + offsets_[u],
            static_cast<std::size_t>(offsets_[u + 1] - offsets_[u])};
  }
  NodeId degree(NodeId u) const {
    return static_cast<NodeId>(offsets_[u + 1] - offsets_[u]);
  }

  const std::vector<std::int64_t>& offsets() const { return offsets_; }
  const std::vector<NodeId>& flat_neighbors() const { return neighbors_; }
  const std::vector<double>& flat_weights() const { return weights_; }

  // Weight of edge {u, v}, or 0 when absent.
  double edge_weight(NodeId u, NodeId v) const;

  // Canonical edge list: u < v, sorted lexicographically.
  std::vector<Edge> edges() const;

  // y = L x with L = D - A. Sizes must equal num_nodes().
  void laplacian_apply(std::span<const double> x, std::span<double> y) const;
  Vector laplacian_apply(std::span<const double> x) const;

  Vector weighted_degrees() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  NodeId n_ = 0;
  std::int64_t m_ = 0;
  std::vector<std::int64_t> offsets_{0};
  std::vector<NodeId> neighbors_;
  std::vector<double> weights_;
};

ComponentLabeling connected_components(const Graph& g);

}  // namespace nvd
