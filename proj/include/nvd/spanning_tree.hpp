#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "nvd/graph.hpp"

namespace nvd {

// Rooted spanning forest. `order` lists every node with parents before their
// children; roots have parent -1.
struct SpanningTree {
  std::vector<NodeId> parent;
  std::vector<double> parent_weight;
  std::vector<NodeId> order;

  NodeId num_nodes() const { return static_cast<NodeId>(parent.size()); }
  std::int64_t num_edges() const;
  std::vector<Edge> edges() const;
  Graph as_graph() const;
};

// Shortest-path tree under edge lengths 1/w, grown from the node of largest
// weighted degree in each component (ties to the smaller id).
SpanningTree build_spanning_tree(const Graph& g);

// Exact solve of L_tree x = b in O(n) by pushing b from the leaves towards
// the roots and integrating potentials back down. The result is zero-mean on
// every tree component. Throws std::invalid_argument when b is not zero-sum
// on some component.
Vector tree_solve(const SpanningTree& t, std::span<const double> b);

}  // namespace nvd
