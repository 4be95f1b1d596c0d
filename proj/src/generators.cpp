#include "nvd/generators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "nvd/rng.hpp"

namespace nvd {
namespace {

std::uint64_t pair_key(NodeId u, NodeId v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
}

Edge key_edge(std::uint64_t key) {
  return {static_cast<NodeId>(key >> 32),
          static_cast<NodeId>(key & 0xFFFFFFFFULL), 1.0};
}

std::int64_t max_pairs(NodeId n) {
  return static_cast<std::int64_t>(n) * (n - 1) / 2;
}

Graph from_keys(NodeId n, const std::unordered_set<std::uint64_t>& keys) {
  std::vector<Edge> edges;
  edges.reserve(keys.size());
  for (auto key : keys) edges.push_back(key_edge(key));
  return Graph::build(n, edges);
}

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

// Number of failures before the next success of a Bernoulli(p) stream.
std::int64_t geometric_skip(Rng& rng, double log_q) {
  const double skip = std::floor(std::log1p(-rng.uniform()) / log_q);
  return skip >= 4e18 ? std::int64_t{4'000'000'000'000'000'000}
                      : static_cast<std::int64_t>(skip);
}

}  // namespace

Model parse_model(std::string_view name) {
  if (name == "er") return Model::ER;
  if (name == "ba") return Model::BA;
  if (name == "ws") return Model::WS;
  if (name == "sbm") return Model::SBM;
  throw std::invalid_argument("unknown model '" + std::string(name) +
                              "' (expected er|ba|ws|sbm)");
}

std::string_view model_name(Model model) {
  switch (model) {
    case Model::ER: return "er";
    case Model::BA: return "ba";
    case Model::WS: return "ws";
    case Model::SBM: return "sbm";
  }
  return "?";
}

void validate(const GenSpec& spec) {
  require(spec.n >= 2, "generator requires n >= 2");
  switch (spec.model) {
    case Model::ER:
      require(spec.m >= 0 && spec.m <= max_pairs(spec.n),
              "ER requires 0 <= m <= n(n-1)/2");
      break;
    case Model::BA:
      require(spec.k >= 1 && spec.k < spec.n, "BA requires 1 <= k < n");
      break;
    case Model::WS:
      require(spec.k >= 0 && spec.k % 2 == 0, "WS requires an even k >= 0");
      require(spec.k < spec.n, "WS requires k < n");
      require(spec.p >= 0.0 && spec.p <= 1.0, "WS requires p in [0, 1]");
      break;
    case Model::SBM:
      require(spec.groups >= 1 && spec.groups <= spec.n,
              "SBM requires 1 <= groups <= n");
      require(spec.p_in >= 0.0 && spec.p_in <= 1.0,
              "SBM requires p_in in [0, 1]");
      require(spec.p_out >= 0.0 && spec.p_out <= 1.0,
              "SBM requires p_out in [0, 1]");
      break;
  }
}

Graph gen_er(NodeId n, std::int64_t m, std::uint64_t seed) {
  validate({.model = Model::ER, .n = n, .m = m});
  Rng rng(seed);
  const std::int64_t total = max_pairs(n);
  const bool complement = m > total / 2;
  const std::int64_t draws = complement ? total - m : m;

  std::unordered_set<std::uint64_t> picked;
  picked.reserve(static_cast<std::size_t>(draws) * 2);
  while (static_cast<std::int64_t>(picked.size()) < draws) {
    auto u = static_cast<NodeId>(rng.below(static_cast<std::uint64_t>(n)));
    auto v = static_cast<NodeId>(rng.below(static_cast<std::uint64_t>(n)));
    if (u == v) continue;
    picked.insert(pair_key(u, v));
  }
  if (!complement) return from_keys(n, picked);

  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (!picked.contains(pair_key(u, v))) edges.push_back({u, v, 1.0});
    }
  }
  return Graph::build(n, edges);
}

Graph gen_ba(NodeId n, int k, std::uint64_t seed) {
  validate({.model = Model::BA, .n = n, .k = k});
  Rng rng(seed);
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(k - 1) +
                static_cast<std::size_t>(k) * static_cast<std::size_t>(n - k));
  // Every edge contributes both endpoints, so drawing uniformly from the urn
  // picks a node with probability proportional to its degree.
  std::vector<NodeId> urn;
  urn.reserve(edges.capacity() * 2);
  for (NodeId i = 0; i + 1 < k; ++i) {
    edges.push_back({i, i + 1, 1.0});
    urn.push_back(i);
    urn.push_back(i + 1);
  }

  std::vector<NodeId> targets;
  targets.reserve(static_cast<std::size_t>(k));
  for (NodeId v = k; v < n; ++v) {
    targets.clear();
    while (static_cast<int>(targets.size()) < k) {
      // Only reachable for k = 1, where the seed is a single isolated node.
      NodeId t = urn.empty()
                     ? static_cast<NodeId>(rng.below(static_cast<std::uint64_t>(v)))
                     : urn[rng.below(urn.size())];
      if (std::find(targets.begin(), targets.end(), t) == targets.end()) {
        targets.push_back(t);
      }
    }
    for (NodeId t : targets) {
      edges.push_back({v, t, 1.0});
      urn.push_back(t);
      urn.push_back(v);
    }
  }
  return Graph::build(n, edges);
}

Graph gen_ws(NodeId n, int k, double p, std::uint64_t seed) {
  validate({.model = Model::WS, .n = n, .k = k, .p = p});
  Rng rng(seed);
  const int half = k / 2;
  std::unordered_set<std::uint64_t> keys;
  keys.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(half) * 2);
  std::vector<NodeId> degree(static_cast<std::size_t>(n), 0);
  for (int j = 1; j <= half; ++j) {
    for (NodeId u = 0; u < n; ++u) {
      keys.insert(pair_key(u, (u + j) % n));
    }
  }
  for (NodeId u = 0; u < n; ++u) degree[u] = k;

  for (int j = 1; j <= half; ++j) {
    for (NodeId u = 0; u < n; ++u) {
      if (!rng.bernoulli(p)) continue;
      const NodeId v = (u + j) % n;
      if (degree[u] >= n - 1 || !keys.contains(pair_key(u, v))) continue;
      NodeId w;
      do {
        w = static_cast<NodeId>(rng.below(static_cast<std::uint64_t>(n)));
      } while (w == u || keys.contains(pair_key(u, w)));
      keys.erase(pair_key(u, v));
      keys.insert(pair_key(u, w));
      --degree[v];
      ++degree[w];
    }
  }
  return from_keys(n, keys);
}

SbmGraph gen_sbm(NodeId n, int groups, double p_in, double p_out,
                 std::uint64_t seed) {
  validate({.model = Model::SBM, .n = n, .groups = groups, .p_in = p_in,
            .p_out = p_out});
  Rng rng(seed);

  SbmGraph out;
  out.groups.resize(static_cast<std::size_t>(n));
  std::vector<NodeId> start(static_cast<std::size_t>(groups) + 1, 0);
  for (int b = 0; b < groups; ++b) {
    const NodeId size = n / groups + (b < n % groups ? 1 : 0);
    start[b + 1] = start[b] + size;
    std::fill(out.groups.begin() + start[b], out.groups.begin() + start[b + 1],
              b);
  }

  std::vector<Edge> edges;
  // Enumerates pair indices [0, count) that succeed with probability p and
  // hands each to `emit`.
  auto sample_pairs = [&](std::int64_t count, double p, auto&& emit) {
    if (p <= 0.0 || count == 0) return;
    if (p >= 1.0) {
      for (std::int64_t i = 0; i < count; ++i) emit(i);
      return;
    }
    const double log_q = std::log1p(-p);
    for (std::int64_t i = geometric_skip(rng, log_q); i < count;
         i += 1 + geometric_skip(rng, log_q)) {
      emit(i);
    }
  };

  for (int a = 0; a < groups; ++a) {
    const NodeId sa = start[a + 1] - start[a];
    // Pair index i enumerates (r, c) with c < r in row-major order.
    NodeId row = 1;
    std::int64_t row_start = 0;
    sample_pairs(static_cast<std::int64_t>(sa) * (sa - 1) / 2, p_in,
                 [&](std::int64_t i) {
                   while (i >= row_start + row) {
                     row_start += row;
                     ++row;
                   }
                   edges.push_back({start[a] + row,
                                    start[a] + static_cast<NodeId>(i - row_start),
                                    1.0});
                 });
    for (int b = a + 1; b < groups; ++b) {
      const NodeId sb = start[b + 1] - start[b];
      sample_pairs(static_cast<std::int64_t>(sa) * sb, p_out,
                   [&](std::int64_t i) {
                     edges.push_back({start[a] + static_cast<NodeId>(i / sb),
                                      start[b] + static_cast<NodeId>(i % sb),
                                      1.0});
                   });
    }
  }
  out.graph = Graph::build(n, edges);
  return out;
}

Graph generate(const GenSpec& spec) {
  switch (spec.model) {
    case Model::ER: return gen_er(spec.n, spec.m, spec.seed);
    case Model::BA: return gen_ba(spec.n, spec.k, spec.seed);
    case Model::WS: return gen_ws(spec.n, spec.k, spec.p, spec.seed);
    case Model::SBM:
      return gen_sbm(spec.n, spec.groups, spec.p_in, spec.p_out, spec.seed)
          .graph;
  }
  throw std::invalid_argument("unknown model");
}

}  // namespace nvd
