#include "nvd/elimination.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <tuple>
#include <utility>

#include "nvd/rng.hpp"

namespace nvd {

void LaplacianFactor::solve_inplace(std::span<double> y) const {
  const std::size_t cols = pivots_.size();
  for (std::size_t c = 0; c < cols; ++c) {
    const double yv = y[pivots_[c]];
    for (std::int64_t k = col_ptr_[c]; k < col_ptr_[c + 1]; ++k) {
      y[rows_[k]] += fractions_[k] * yv;
    }
  }
  for (std::size_t c = 0; c < cols; ++c) {
    const NodeId v = pivots_[c];
    y[v] = diag_[c] > 0.0 ? y[v] / diag_[c] : 0.0;
  }
  for (std::size_t c = cols; c-- > 0;) {
    double acc = y[pivots_[c]];
    for (std::int64_t k = col_ptr_[c]; k < col_ptr_[c + 1]; ++k) {
      acc += fractions_[k] * y[rows_[k]];
    }
    y[pivots_[c]] = acc;
  }
}

class Eliminator {
 public:
  Eliminator(const Graph& g, CliqueMode mode, EliminationOrder order,
             std::uint64_t seed)
      : mode_(mode), order_(order), rng_(seed) {
    const NodeId n = g.num_nodes();
    factor_.n_ = n;
    adj_.resize(static_cast<std::size_t>(n));
    degree_.resize(static_cast<std::size_t>(n));
    eliminated_.assign(static_cast<std::size_t>(n), 0);
    for (NodeId u = 0; u < n; ++u) {
      auto nbrs = g.neighbors(u);
      auto ws = g.weights(u);
      adj_[u].reserve(nbrs.size());
      for (std::size_t k = 0; k < nbrs.size(); ++k) adj_[u].push_back({nbrs[k], ws[k]});
      degree_[u] = static_cast<NodeId>(nbrs.size());
    }
    factor_.pivots_.reserve(static_cast<std::size_t>(n));
    factor_.diag_.reserve(static_cast<std::size_t>(n));
    factor_.col_ptr_.reserve(static_cast<std::size_t>(n) + 1);
    factor_.rows_.reserve(static_cast<std::size_t>(g.num_edges()) * 2);
    factor_.fractions_.reserve(static_cast<std::size_t>(g.num_edges()) * 2);
  }

  LaplacianFactor run() {
    const NodeId n = factor_.n_;
    if (order_ == EliminationOrder::Random) {
      std::vector<NodeId> perm(static_cast<std::size_t>(n));
      for (NodeId i = 0; i < n; ++i) perm[i] = i;
      for (NodeId i = n - 1; i > 0; --i) {
        std::swap(perm[i], perm[rng_.below(static_cast<std::uint64_t>(i) + 1)]);
      }
      for (NodeId v : perm) eliminate_vertex(v);
    } else {
      tiebreak_.resize(static_cast<std::size_t>(n));
      for (NodeId v = 0; v < n; ++v) {
        tiebreak_[v] = rng_.next();
        heap_.push({degree_[v], tiebreak_[v], v});
      }
      while (!heap_.empty()) {
        auto [d, tb, v] = heap_.top();
        heap_.pop();
        if (eliminated_[v] || d != degree_[v]) continue;
        eliminate_vertex(v);
      }
    }
    return std::move(factor_);
  }

 private:
  struct HalfEdge {
    NodeId to;
    double w;
  };
  struct Neighbor {
    NodeId to;
    double w;
    NodeId multiplicity;
  };
  using HeapEntry = std::tuple<NodeId, std::uint64_t, NodeId>;

  void add_edge(NodeId a, NodeId b, double w) {
    adj_[a].push_back({b, w});
    adj_[b].push_back({a, w});
    ++degree_[a];
    ++degree_[b];
  }

  // Drops edges to eliminated vertices and merges parallel edges.
  void compact(NodeId u) {
    auto& list = adj_[u];
    std::erase_if(list, [&](const HalfEdge& e) { return eliminated_[e.to] != 0; });
    std::sort(list.begin(), list.end(),
              [](const HalfEdge& a, const HalfEdge& b) { return a.to < b.to; });
    std::size_t out = 0;
    for (std::size_t i = 0; i < list.size();) {
      HalfEdge merged = list[i];
      for (++i; i < list.size() && list[i].to == merged.to; ++i) merged.w += list[i].w;
      list[out++] = merged;
    }
    list.resize(out);
    degree_[u] = static_cast<NodeId>(out);
  }

  void eliminate_vertex(NodeId v) {
    nbrs_.clear();
    std::vector<HalfEdge> own;
    own.swap(adj_[v]);
    std::erase_if(own, [&](const HalfEdge& e) { return eliminated_[e.to] != 0; });
    std::sort(own.begin(), own.end(), [](const HalfEdge& a, const HalfEdge& b) {
      return a.to < b.to || (a.to == b.to && a.w < b.w);
    });
    for (std::size_t i = 0; i < own.size();) {
      Neighbor nb{own[i].to, 0.0, 0};
      for (; i < own.size() && own[i].to == nb.to; ++i) {
        nb.w += own[i].w;
        ++nb.multiplicity;
      }
      nbrs_.push_back(nb);
    }
    eliminated_[v] = 1;
    for (const Neighbor& nb : nbrs_) degree_[nb.to] -= nb.multiplicity;

    const std::size_t k = nbrs_.size();
    std::sort(nbrs_.begin(), nbrs_.end(), [](const Neighbor& a, const Neighbor& b) {
      return a.w < b.w || (a.w == b.w && a.to < b.to);
    });
    double total = 0.0;
    for (const Neighbor& nb : nbrs_) total += nb.w;

    factor_.pivots_.push_back(v);
    factor_.diag_.push_back(total);
    for (const Neighbor& nb : nbrs_) {
      factor_.rows_.push_back(nb.to);
      factor_.fractions_.push_back(nb.w / total);
    }
    factor_.col_ptr_.push_back(static_cast<std::int64_t>(factor_.rows_.size()));

    if (k >= 2) {
      if (mode_ == CliqueMode::Exact) {
        for (std::size_t i = 0; i < k; ++i) {
          for (std::size_t j = i + 1; j < k; ++j) {
            add_edge(nbrs_[i].to, nbrs_[j].to, nbrs_[i].w * nbrs_[j].w / total);
          }
        }
        for (const Neighbor& nb : nbrs_) compact(nb.to);
      } else {
        sample_clique(total);
      }
    }

    if (order_ == EliminationOrder::MinDegree) {
      for (const Neighbor& nb : nbrs_) {
        heap_.push({degree_[nb.to], tiebreak_[nb.to], nb.to});
      }
    }
  }

  void sample_clique(double total) {
    const std::size_t k = nbrs_.size();
    prefix_.resize(k);
    suffix_.resize(k);
    double acc = 0.0;
    for (std::size_t i = 0; i < k; ++i) prefix_[i] = (acc += nbrs_[i].w);
    acc = 0.0;
    for (std::size_t i = k; i-- > 0;) {
      suffix_[i] = acc;  // sum over l > i
      acc += nbrs_[i].w;
    }
    for (std::size_t i = 0; i + 1 < k; ++i) {
      const double target = prefix_[i] + rng_.uniform() * suffix_[i];
      auto it = std::upper_bound(prefix_.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                                 prefix_.end(), target);
      const std::size_t j =
          std::min(static_cast<std::size_t>(it - prefix_.begin()), k - 1);
      add_edge(nbrs_[i].to, nbrs_[j].to, nbrs_[i].w * suffix_[i] / total);
    }
  }

  CliqueMode mode_;
  EliminationOrder order_;
  Rng rng_;
  LaplacianFactor factor_;
  std::vector<std::vector<HalfEdge>> adj_;
  std::vector<NodeId> degree_;
  std::vector<char> eliminated_;
  std::vector<std::uint64_t> tiebreak_;
  std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<>> heap_;
  std::vector<Neighbor> nbrs_;
  std::vector<double> prefix_;
  std::vector<double> suffix_;
};

LaplacianFactor eliminate(const Graph& g, CliqueMode mode,
                          EliminationOrder order, std::uint64_t seed) {
  return Eliminator(g, mode, order, seed).run();
}

FactorPreconditioner::FactorPreconditioner(LaplacianFactor factor,
                                           ComponentLabeling comps)
    : factor_(std::move(factor)), comps_(std::move(comps)) {}

void FactorPreconditioner::apply(std::span<const double> r,
                                 std::span<double> z) const {
  std::copy(r.begin(), r.end(), z.begin());
  project_zero_mean_inplace(z, comps_);
  factor_.solve_inplace(z);
  project_zero_mean_inplace(z, comps_);
}

std::unique_ptr<FactorPreconditioner> approx_chol_factor(const Graph& g,
                                                         const SolverConfig& cfg) {
  return std::make_unique<FactorPreconditioner>(
      eliminate(g, CliqueMode::Sampled, cfg.approx_chol_order, cfg.seed),
      connected_components(g));
}

std::int64_t default_aug_tree_extra(NodeId n) {
  return static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<double>(n))));
}

Graph augmented_tree_graph(const Graph& g, const SpanningTree& t,
                           std::int64_t extra, std::uint64_t seed) {
  std::vector<Edge> edges = t.edges();
  std::vector<std::pair<double, Edge>> candidates;
  Rng rng(seed);
  for (const Edge& e : g.edges()) {
    if (t.parent[e.u] == e.v || t.parent[e.v] == e.u) continue;
    // log of U^(1/w); the largest keys form a weighted sample without
    // replacement.
    const double u = 1.0 - rng.uniform();
    candidates.push_back({std::log(u) / e.w, e});
  }
  const auto keep = static_cast<std::size_t>(
      std::clamp<std::int64_t>(extra, 0, static_cast<std::int64_t>(candidates.size())));
  std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(keep),
                    candidates.end(), [](const auto& a, const auto& b) {
                      return a.first > b.first ||
                             (a.first == b.first &&
                              std::tie(a.second.u, a.second.v) <
                                  std::tie(b.second.u, b.second.v));
                    });
  for (std::size_t i = 0; i < keep; ++i) edges.push_back(candidates[i].second);
  return Graph::build(g.num_nodes(), edges);
}

std::unique_ptr<FactorPreconditioner> build_aug_tree_precond(
    const Graph& g, const SpanningTree& t, std::int64_t extra,
    std::uint64_t seed) {
  const Graph h = augmented_tree_graph(g, t, extra, seed);
  return std::make_unique<FactorPreconditioner>(
      eliminate(h, CliqueMode::Exact, EliminationOrder::MinDegree, seed),
      connected_components(g));
}

}  // namespace nvd
