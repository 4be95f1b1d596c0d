#include "nvd/spanning_tree.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>

namespace nvd {

std::int64_t SpanningTree::num_edges() const {
  std::int64_t count = 0;
  for (NodeId p : parent) count += p >= 0 ? 1 : 0;
  return count;
}

std::vector<Edge> SpanningTree::edges() const {
  std::vector<Edge> out;
  out.reserve(static_cast<std::size_t>(num_edges()));
  for (NodeId v = 0; v < num_nodes(); ++v) {
    if (parent[v] >= 0) out.push_back({v, parent[v], parent_weight[v]});
  }
  return out;
}

Graph SpanningTree::as_graph() const {
  const auto tree_edges = edges();
  return Graph::build(num_nodes(), tree_edges);
}

SpanningTree build_spanning_tree(const Graph& g) {
  const NodeId n = g.num_nodes();
  const ComponentLabeling comps = connected_components(g);
  const Vector deg = g.weighted_degrees();

  std::vector<NodeId> root(static_cast<std::size_t>(comps.count), -1);
  for (NodeId u = 0; u < n; ++u) {
    NodeId& r = root[comps.label[u]];
    if (r < 0 || deg[u] > deg[r]) r = u;
  }

  SpanningTree t;
  t.parent.assign(static_cast<std::size_t>(n), -1);
  t.parent_weight.assign(static_cast<std::size_t>(n), 0.0);
  t.order.reserve(static_cast<std::size_t>(n));

  using Entry = std::pair<double, NodeId>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  std::vector<double> dist(static_cast<std::size_t>(n),
                           std::numeric_limits<double>::infinity());
  std::vector<char> done(static_cast<std::size_t>(n), 0);
  for (NodeId r : root) {
    dist[r] = 0.0;
    heap.push({0.0, r});
  }
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (done[u]) continue;
    done[u] = 1;
    t.order.push_back(u);
    auto nbrs = g.neighbors(u);
    auto ws = g.weights(u);
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
      const NodeId v = nbrs[k];
      const double nd = d + 1.0 / ws[k];
      if (!done[v] && nd < dist[v]) {
        dist[v] = nd;
        t.parent[v] = u;
        t.parent_weight[v] = ws[k];
        heap.push({nd, v});
      }
    }
  }
  return t;
}

Vector tree_solve(const SpanningTree& t, std::span<const double> b) {
  const NodeId n = t.num_nodes();
  if (b.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("tree_solve: vector length mismatch");
  }

  // Accumulate subtree sums; what reaches a root is that component's total.
  Vector flow(b.begin(), b.end());
  double scale = 0.0;
  for (double v : b) scale += std::abs(v);
  for (auto it = t.order.rbegin(); it != t.order.rend(); ++it) {
    const NodeId v = *it;
    if (t.parent[v] >= 0) flow[t.parent[v]] += flow[v];
  }

  std::vector<NodeId> comp_root(static_cast<std::size_t>(n), -1);
  Vector x(static_cast<std::size_t>(n), 0.0);
  for (NodeId v : t.order) {
    const NodeId p = t.parent[v];
    if (p < 0) {
      if (std::abs(flow[v]) > 1e-9 * scale + 1e-300) {
        throw std::invalid_argument(
            "tree_solve: right-hand side is not zero-sum on the component of "
            "node " + std::to_string(v));
      }
      comp_root[v] = v;
      x[v] = 0.0;
    } else {
      comp_root[v] = comp_root[p];
      x[v] = x[p] + flow[v] / t.parent_weight[v];
    }
  }

  Vector sum(static_cast<std::size_t>(n), 0.0);
  std::vector<NodeId> count(static_cast<std::size_t>(n), 0);
  for (NodeId v = 0; v < n; ++v) {
    sum[comp_root[v]] += x[v];
    ++count[comp_root[v]];
  }
  for (NodeId v = 0; v < n; ++v) x[v] -= sum[comp_root[v]] / count[comp_root[v]];
  return x;
}

}  // namespace nvd
