#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "nvd/graph.hpp"

namespace nvd {

enum class Model { ER, BA, WS, SBM };

Model parse_model(std::string_view name);
std::string_view model_name(Model model);

// Parameters of one synthetic network. Only the fields relevant to `model`
// are read: ER uses m; BA uses k; WS uses k and p; SBM uses groups, p_in and
// p_out.
struct GenSpec {
  Model model = Model::ER;
  NodeId n = 0;
  std::int64_t m = 0;
  int k = 0;
  double p = 0.0;
  int groups = 1;
  double p_in = 0.0;
  double p_out = 0.0;
  std::uint64_t seed = 0;
};

struct SbmGraph {
  Graph graph;
  std::vector<int> groups;  // group id per node, contiguous blocks
};

// G(n, m): exactly m distinct edges drawn uniformly by rejection sampling of
// node pairs. When m exceeds half of all pairs the complement is sampled
// instead.
Graph gen_er(NodeId n, std::int64_t m, std::uint64_t seed);

// Preferential attachment grown from a k-node path. Each new node links to k
// distinct existing nodes drawn from the urn of edge endpoints, so
// m = (k - 1) + k (n - k).
Graph gen_ba(NodeId n, int k, std::uint64_t seed);

// Ring lattice with k/2 neighbours per side; every lattice edge (u, u + j)
// has its far endpoint replaced, with probability p, by a uniform node that
// is neither u nor already adjacent to u. m = n k / 2.
Graph gen_ws(NodeId n, int k, double p, std::uint64_t seed);

// Planted partition with `groups` contiguous blocks (the first n % groups
// blocks get one extra node). Pairs are sampled with geometric skipping so
// the cost is proportional to the number of generated edges.
SbmGraph gen_sbm(NodeId n, int groups, double p_in, double p_out,
                 std::uint64_t seed);

// Throws std::invalid_argument describing the first violated constraint.
void validate(const GenSpec& spec);

Graph generate(const GenSpec& spec);

}  // namespace nvd
