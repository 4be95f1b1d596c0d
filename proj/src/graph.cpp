#include "nvd/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

namespace nvd {

Graph Graph::build(NodeId n, std::span<const Edge> edges) {
  if (n < 1) throw std::invalid_argument("graph must have at least one node");

  std::vector<std::int64_t> counts(static_cast<std::size_t>(n) + 1, 0);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n) {
      throw std::out_of_range("edge #" + std::to_string(i) + " (" +
                              std::to_string(e.u) + ", " + std::to_string(e.v) +
                              ") has an endpoint outside [0, " +
                              std::to_string(n) + ")");
    }
    if (!(e.w > 0.0) || !std::isfinite(e.w)) {
      throw std::invalid_argument("edge #" + std::to_string(i) +
                                  " has non-positive or non-finite weight");
    }
    if (e.u == e.v) continue;
    ++counts[e.u + 1];
    ++counts[e.v + 1];
  }
  std::partial_sum(counts.begin(), counts.end(), counts.begin());

  // Bucket directed half-edges by source, then sort and merge each bucket.
  std::vector<std::pair<NodeId, double>> half(counts.back());
  std::vector<std::int64_t> fill(counts.begin(), counts.end() - 1);
  for (const Edge& e : edges) {
    if (e.u == e.v) continue;
    half[fill[e.u]++] = {e.v, e.w};
    half[fill[e.v]++] = {e.u, e.w};
  }

  Graph g;
  g.n_ = n;
  g.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  g.neighbors_.reserve(half.size());
  g.weights_.reserve(half.size());
  for (NodeId u = 0; u < n; ++u) {
    auto first = half.begin() + counts[u];
    auto last = half.begin() + counts[u + 1];
    // Sorting on (neighbor, weight) makes duplicate summation independent of
    // input order.
    std::sort(first, last);
    for (auto it = first; it != last;) {
      NodeId v = it->first;
      double w = 0.0;
      for (; it != last && it->first == v; ++it) w += it->second;
      g.neighbors_.push_back(v);
      g.weights_.push_back(w);
    }
    g.offsets_[u + 1] = static_cast<std::int64_t>(g.neighbors_.size());
  }
  g.m_ = static_cast<std::int64_t>(g.neighbors_.size()) / 2;
  return g;
}

double Graph::edge_weight(NodeId u, NodeId v) const {
  auto nbrs = neighbors(u);
  auto it = std::lower_bound(nbrs.begin(), nbrs.end(), v);
  if (it == nbrs.end() || *it != v) return 0.0;
  return weights(u)[static_cast<std::size_t>(it - nbrs.begin())];
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(static_cast<std::size_t>(m_));
  for (NodeId u = 0; u < n_; ++u) {
    auto nbrs = neighbors(u);
    auto ws = weights(u);
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
      if (u < nbrs[k]) out.push_back({u, nbrs[k], ws[k]});
    }
  }
  return out;
}

void Graph::laplacian_apply(std::span<const double> x,
                            std::span<double> y) const {
  if (x.size() != static_cast<std::size_t>(n_) ||
      y.size() != static_cast<std::size_t>(n_)) {
    throw std::invalid_argument("laplacian_apply: vector length " +
                                std::to_string(x.size()) + " != node count " +
                                std::to_string(n_));
  }
  for (NodeId u = 0; u < n_; ++u) {
    const double xu = x[u];
    double acc = 0.0;
    for (std::int64_t k = offsets_[u]; k < offsets_[u + 1]; ++k) {
      acc += weights_[k] * (xu - x[neighbors_[k]]);
    }
    y[u] = acc;
  }
}

Vector Graph::laplacian_apply(std::span<const double> x) const {
  Vector y(x.size());
  laplacian_apply(x, y);
  return y;
}

Vector Graph::weighted_degrees() const {
  Vector d(static_cast<std::size_t>(n_), 0.0);
  for (NodeId u = 0; u < n_; ++u) {
    for (double w : weights(u)) d[u] += w;
  }
  return d;
}

ComponentLabeling connected_components(const Graph& g) {
  const NodeId n = g.num_nodes();
  ComponentLabeling comps;
  comps.label.assign(static_cast<std::size_t>(n), -1);
  std::vector<NodeId> queue;
  queue.reserve(static_cast<std::size_t>(n));
  for (NodeId s = 0; s < n; ++s) {
    if (comps.label[s] >= 0) continue;
    const NodeId id = comps.count++;
    queue.clear();
    queue.push_back(s);
    comps.label[s] = id;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (NodeId v : g.neighbors(queue[head])) {
        if (comps.label[v] < 0) {
          comps.label[v] = id;
          queue.push_back(v);
        }
      }
    }
    comps.sizes.push_back(static_cast<NodeId>(queue.size()));
  }
  return comps;
}

}  // namespace nvd
