#pragma once

// Test-only reference computations. Everything here is deliberately naive
// and shares no code with the library's solver or LAPACK paths.

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <utility>
#include <vector>

#include "nvd/graph.hpp"
#include "nvd/rng.hpp"

namespace nvd::testing {

using Dense = std::vector<std::vector<double>>;

inline Dense dense_laplacian(const Graph& g) {
  const auto n = static_cast<std::size_t>(g.num_nodes());
  Dense lap(n, std::vector<double>(n, 0.0));
  for (const Edge& e : g.edges()) {
    lap[e.u][e.u] += e.w;
    lap[e.v][e.v] += e.w;
    lap[e.u][e.v] -= e.w;
    lap[e.v][e.u] -= e.w;
  }
  return lap;
}

inline std::vector<double> dense_multiply(const Dense& a,
                                          const std::vector<double>& x) {
  std::vector<double> y(a.size(), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
  }
  return y;
}

// Gauss-Jordan inverse with partial pivoting.
inline Dense invert(Dense a) {
  const std::size_t n = a.size();
  Dense inv(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    }
    if (std::abs(a[piv][c]) < 1e-14) throw std::runtime_error("singular");
    std::swap(a[c], a[piv]);
    std::swap(inv[c], inv[piv]);
    const double d = a[c][c];
    for (std::size_t j = 0; j < n; ++j) {
      a[c][j] /= d;
      inv[c][j] /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0.0) continue;
      const double f = a[r][c];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[c][j];
        inv[r][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

// L^+ = (L + K)^{-1} - K with K the orthogonal projector onto the kernel,
// i.e. the sum of J_c / n_c over connected components c.
inline Dense grounded_pinv(const Graph& g) {
  const ComponentLabeling comps = connected_components(g);
  const auto n = static_cast<std::size_t>(g.num_nodes());
  Dense kernel(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (comps.label[i] == comps.label[j]) {
        kernel[i][j] = 1.0 / comps.sizes[comps.label[i]];
      }
    }
  }
  Dense shifted = dense_laplacian(g);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) shifted[i][j] += kernel[i][j];
  }
  Dense inv = invert(std::move(shifted));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) inv[i][j] -= kernel[i][j];
  }
  return inv;
}

inline double quadratic_form(const Dense& a, const std::vector<double>& y) {
  const auto ay = dense_multiply(a, y);
  double q = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) q += y[i] * ay[i];
  return q;
}

inline double ge_distance_oracle(const Graph& g, const std::vector<double>& a,
                                 const std::vector<double>& b) {
  std::vector<double> y(a.size());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = a[i] - b[i];
  return std::sqrt(std::max(0.0, quadratic_form(grounded_pinv(g), y)));
}

// Sum of 1/w along the unique u-v path of a forest; throws when unreachable.
inline double tree_path_resistance(const Graph& tree, NodeId u, NodeId v) {
  std::vector<double> dist(static_cast<std::size_t>(tree.num_nodes()), -1.0);
  std::queue<NodeId> q;
  dist[u] = 0.0;
  q.push(u);
  while (!q.empty()) {
    const NodeId x = q.front();
    q.pop();
    auto nbrs = tree.neighbors(x);
    auto ws = tree.weights(x);
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
      if (dist[nbrs[k]] < 0.0) {
        dist[nbrs[k]] = dist[x] + 1.0 / ws[k];
        q.push(nbrs[k]);
      }
    }
  }
  if (dist[v] < 0.0) throw std::runtime_error("unreachable");
  return dist[v];
}

// Uniform random labelled tree: node i > 0 attaches to a uniform earlier node.
inline Graph random_tree(NodeId n, std::uint64_t seed, bool weighted = false) {
  Rng rng(seed);
  std::vector<Edge> edges;
  for (NodeId i = 1; i < n; ++i) {
    const auto p = static_cast<NodeId>(rng.below(static_cast<std::uint64_t>(i)));
    edges.push_back({p, i, weighted ? 0.5 + 2.0 * rng.uniform() : 1.0});
  }
  return Graph::build(n, edges);
}

inline std::vector<double> random_vector(std::size_t n, Rng& rng,
                                         double lo = -1.0, double hi = 1.0) {
  std::vector<double> v(n);
  for (double& x : v) x = lo + (hi - lo) * rng.uniform();
  return v;
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

}  // namespace nvd::testing
