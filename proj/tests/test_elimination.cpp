#include <gtest/gtest.h>

#include "nvd/elimination.hpp"
#include "nvd/generators.hpp"
#include "oracles.hpp"

namespace nvd {
namespace {

TEST(ApproxChol, TreeFactorIsExact) {
  const Graph g = testing::random_tree(400, 5, true);
  Rng rng(2);
  const SolveReport r = solve_lap(g, testing::random_vector(400, rng), Method::ApproxChol);
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.iterations, 1);
}

TEST(ApproxChol, CycleFactorIsExact) {
  std::vector<Edge> edges;
  for (NodeId i = 0; i < 50; ++i) edges.push_back({i, (i + 1) % 50, 1.0 + i % 3});
  const Graph g = Graph::build(50, edges);
  Rng rng(3);
  const SolveReport r = solve_lap(g, testing::random_vector(50, rng), Method::ApproxChol);
  EXPECT_EQ(r.iterations, 1);
}

TEST(ApproxChol, TriangleFactorIsExact) {
  const std::vector<Edge> edges = {{0, 1}, {1, 2}, {0, 2}};
  const SolveReport r = solve_lap(Graph::build(3, edges), Vector{1, 0, -1}, Method::ApproxChol);
  EXPECT_EQ(r.iterations, 1);
  EXPECT_NEAR(r.x[0], 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(r.x[2], -1.0 / 3.0, 1e-12);
}

TEST(ApproxChol, FewIterationsOnRandomGraph) {
  const Graph g = gen_er(1000, 5000, 3);
  Rng rng(4);
  const SolveReport r = solve_lap(g, testing::random_vector(1000, rng), Method::ApproxChol);
  EXPECT_TRUE(r.converged);
  EXPECT_LE(r.iterations, 50);
}

TEST(ApproxChol, RandomOrderConverges) {
  const Graph g = gen_ba(800, 4, 6);
  SolverConfig cfg;
  cfg.approx_chol_order = EliminationOrder::Random;
  Rng rng(1);
  const Vector y = testing::random_vector(800, rng);
  const SolveReport r = solve_lap(g, y, Method::ApproxChol, cfg);
  EXPECT_TRUE(r.converged);
  const SolveReport ref = solve_lap(g, y, Method::Cg);
  for (std::size_t i = 0; i < y.size(); ++i) EXPECT_NEAR(r.x[i], ref.x[i], 1e-7);
}

TEST(ApproxChol, DeterministicForSeed) {
  const Graph g = gen_ws(500, 6, 0.3, 2);
  SolverConfig cfg;
  cfg.seed = 77;
  const auto f1 = approx_chol_factor(g, cfg);
  const auto f2 = approx_chol_factor(g, cfg);
  EXPECT_EQ(f1->factor().nnz(), f2->factor().nnz());
  EXPECT_TRUE(std::ranges::equal(f1->factor().pivots(), f2->factor().pivots()));
}

TEST(Eliminate, ExactModeSolvesExactly) {
  const Graph g = gen_er(80, 300, 9);
  const auto comps = connected_components(g);
  FactorPreconditioner pre(eliminate(g, CliqueMode::Exact, EliminationOrder::Random, 3), comps);
  Rng rng(7);
  const Vector b = project_zero_mean(testing::random_vector(80, rng), comps);
  const auto ref = testing::dense_multiply(testing::grounded_pinv(g), b);
  const Vector z = pre.apply(b);
  for (std::size_t i = 0; i < b.size(); ++i) EXPECT_NEAR(z[i], ref[i], 1e-9);
}

TEST(Eliminate, SampledFactorStaysSparse) {
  const Graph g = gen_er(600, 3000, 1);
  const LaplacianFactor s = eliminate(g, CliqueMode::Sampled, EliminationOrder::MinDegree, 5);
  const LaplacianFactor e = eliminate(g, CliqueMode::Exact, EliminationOrder::MinDegree, 5);
  EXPECT_EQ(s.num_nodes(), 600);
  EXPECT_LT(s.nnz(), e.nnz() / 4);
  EXPECT_LE(static_cast<std::int64_t>(s.nnz()), 4 * g.num_edges());
}

}  // namespace
}  // namespace nvd
