#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "nvd/generators.hpp"
#include "nvd/metrics.hpp"
#include "oracles.hpp"

namespace nvd {
namespace {

Graph path(NodeId n) {
  std::vector<Edge> edges;
  for (NodeId i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  return Graph::build(n, edges);
}

Graph k3() {
  const std::vector<Edge> edges = {{0, 1}, {1, 2}, {0, 2}};
  return Graph::build(3, edges);
}

Graph barbell() {
  std::vector<Edge> edges;
  for (NodeId side : {0, 5}) {
    for (NodeId i = 0; i < 5; ++i) {
      for (NodeId j = i + 1; j < 5; ++j) edges.push_back({side + i, side + j});
    }
  }
  edges.push_back({4, 5});
  return Graph::build(10, edges);
}

TEST(GeDistance, Examples) {
  for (Method m : kAllMethods) {
    EXPECT_NEAR(ge_distance(path(2), Vector{1, 0}, Vector{0, 1}, m).distance, 1.0, 1e-8);
    EXPECT_EQ(ge_distance(k3(), Vector{1, 2, 3}, Vector{1, 2, 3}, m).distance, 0.0);
    EXPECT_NEAR(ge_distance(k3(), Vector{1, 0, 0}, Vector{0, 1, 0}, m).distance,
                std::sqrt(2.0 / 3.0), 1e-8);
  }
}

TEST(GeDistance, RejectsLengthMismatch) {
  EXPECT_THROW((void)ge_distance(k3(), Vector{1, 0}, Vector{0, 1, 0}, Method::Cg),
               std::invalid_argument);
}

TEST(EffectiveResistance, Examples) {
  for (Method m : kAllMethods) {
    EXPECT_NEAR(effective_resistance(path(3), 0, 2, m), 2.0, 1e-8);
    EXPECT_NEAR(effective_resistance(k3(), 1, 2, m), 2.0 / 3.0, 1e-8);
    EXPECT_EQ(effective_resistance(k3(), 1, 1, m), 0.0);
  }
}

TEST(EffectiveResistance, Errors) {
  const std::vector<Edge> edges = {{0, 1}, {2, 3}};
  const Graph g = Graph::build(4, edges);
  EXPECT_THROW((void)effective_resistance(g, 0, 3, Method::Cg), std::domain_error);
  EXPECT_THROW((void)effective_resistance(g, 0, 4, Method::Cg), std::out_of_range);
  EXPECT_THROW((void)effective_resistance(g, -1, 2, Method::Cg), std::out_of_range);
}

TEST(EffectiveResistance, TreesMatchPathLength) {
  Rng rng(4);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Graph t = testing::random_tree(150, seed, true);
    for (int k = 0; k < 5; ++k) {
      const auto u = static_cast<NodeId>(rng.below(150));
      const auto v = static_cast<NodeId>(rng.below(150));
      const double ref = testing::tree_path_resistance(t, u, v);
      for (Method m : kAllMethods) {
        EXPECT_NEAR(effective_resistance(t, u, v, m), ref, 1e-9) << method_name(m);
      }
    }
  }
}

TEST(EffectiveResistance, MonotoneUnderEdgeAddition) {
  Rng rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Edge> edges;
    for (NodeId i = 1; i < 25; ++i) {
      edges.push_back({static_cast<NodeId>(rng.below(static_cast<std::uint64_t>(i))), i});
    }
    const Graph before = Graph::build(25, edges);
    edges.push_back({static_cast<NodeId>(rng.below(25)), static_cast<NodeId>(rng.below(25))});
    const Graph after = Graph::build(25, edges);
    const auto pb = testing::grounded_pinv(before);
    const auto pa = testing::grounded_pinv(after);
    for (NodeId u = 0; u < 25; u += 3) {
      for (NodeId v = u + 1; v < 25; v += 4) {
        const double rb = effective_resistance(before, u, v, Method::ApproxChol);
        const double ra = effective_resistance(after, u, v, Method::ApproxChol);
        EXPECT_NEAR(rb, pb[u][u] + pb[v][v] - 2 * pb[u][v], 1e-9);
        EXPECT_LE(ra, rb + 1e-9);
      }
    }
  }
}

TEST(Polarization, TwoNodePath) {
  const TwoClassLabeling groups{{0, 1}, {"a", "b"}};
  EXPECT_NEAR(polarization_score(path(2), groups, Method::Cg).distance, 1.0, 1e-8);
}

TEST(Polarization, BarbellMatchesOracle) {
  const Graph g = barbell();
  TwoClassLabeling groups;
  groups.names = {"left", "right"};
  Vector a(10, 0.0), b(10, 0.0);
  for (NodeId u = 0; u < 10; ++u) {
    groups.cls.push_back(u < 5 ? 0 : 1);
    (u < 5 ? a : b)[u] = 0.2;
  }
  const double ref = testing::ge_distance_oracle(g, a, b);
  for (Method m : kAllMethods) {
    EXPECT_NEAR(polarization_score(g, groups, m).distance, ref, 1e-8) << method_name(m);
  }
}

TEST(Polarization, UnlabeledNodesAndRawIndicators) {
  const Graph g = path(4);
  const TwoClassLabeling groups{{0, -1, 1, 1}, {"x", "y"}};
  const double raw = polarization_score(g, groups, Method::Cg, {}, false).distance;
  EXPECT_NEAR(raw, testing::ge_distance_oracle(g, Vector{1, 0, 0, 0}, Vector{0, 0, 1, 1}), 1e-8);
  const double norm = polarization_score(g, groups, Method::Cg).distance;
  EXPECT_NEAR(norm, testing::ge_distance_oracle(g, Vector{1, 0, 0, 0}, Vector{0, 0, 0.5, 0.5}),
              1e-8);
}

TEST(Polarization, RejectsMissingClass) {
  const TwoClassLabeling one{{0, 0, -1}, {"only"}};
  EXPECT_THROW((void)polarization_score(path(3), one, Method::Cg), std::invalid_argument);
  const TwoClassLabeling empty_second{{0, 0, 0}, {"a", "b"}};
  EXPECT_THROW((void)polarization_score(path(3), empty_second, Method::Cg),
               std::invalid_argument);
}

TEST(GeDistance, ScaleCovarianceAndTranslationPerComponent) {
  const Graph g = gen_sbm(120, 2, 0.2, 0.0, 3).graph;  // two components
  const auto comps = connected_components(g);
  Rng rng(10);
  for (int trial = 0; trial < 20; ++trial) {
    const Vector a = testing::random_vector(120, rng);
    const Vector b = testing::random_vector(120, rng);
    for (Method m : kSparseMethods) {
      const double d = ge_distance(g, a, b, m).distance;
      const double lambda = rng.uniform() * 6 - 3;
      Vector la = a, lb = b;
      for (std::size_t i = 0; i < a.size(); ++i) {
        la[i] *= lambda;
        lb[i] *= lambda;
      }
      EXPECT_NEAR(ge_distance(g, la, lb, m).distance, std::abs(lambda) * d, 1e-9 * (1 + d));
      Vector shifted = a;
      const double c0 = rng.uniform() * 5, c1 = rng.uniform() * 5;
      for (std::size_t i = 0; i < a.size(); ++i) shifted[i] += comps.label[i] == 0 ? c0 : c1;
      EXPECT_NEAR(ge_distance(g, shifted, b, m).distance, d, 1e-9 * (1 + d));
    }
  }
}

TEST(GeDistance, NoWarningOnOrdinaryInput) {
  Rng rng(2);
  const Graph g = gen_er(100, 400, 2);
  const DistanceResult r = ge_distance(g, testing::random_vector(100, rng),
                                       testing::random_vector(100, rng), Method::Cg);
  EXPECT_FALSE(r.negative_warning);
  EXPECT_GT(r.squared, 0.0);
  EXPECT_NEAR(r.distance * r.distance, r.squared, 1e-12 * r.squared);
}

}  // namespace
}  // namespace nvd
