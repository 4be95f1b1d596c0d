#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string_view>

#include "nvd/exact.hpp"
#include "nvd/graph.hpp"

namespace nvd {

enum class Method { Baseline, Cg, CgJacobi, AugTree, ApproxChol };

inline constexpr std::array<Method, 5> kAllMethods = {
    Method::Baseline, Method::Cg, Method::CgJacobi, Method::AugTree,
    Method::ApproxChol};
inline constexpr std::array<Method, 4> kSparseMethods = {
    Method::Cg, Method::CgJacobi, Method::AugTree, Method::ApproxChol};

// Accepts the stable names baseline, cg, cg_jacobi, aug_tree, approx_chol.
Method parse_method(std::string_view name);
std::string_view method_name(Method method);

enum class EliminationOrder {
  MinDegree,  // dynamic minimum degree, random tie-breaks
  Random,     // uniformly random permutation fixed up front
};

struct SolverConfig {
  double rel_tolerance = 1e-10;
  // Defaults to 10 n when unset.
  std::optional<std::int64_t> max_iters;
  std::uint64_t seed = 1;
  // Off-tree edges added to the aug_tree preconditioner; unset picks
  // default_aug_tree_extra(n).
  std::optional<std::int64_t> aug_tree_extra;
  EliminationOrder approx_chol_order = EliminationOrder::MinDegree;
  NodeId dense_cap = kDefaultDenseCap;
  // Called with the current iterate after every CG iteration.
  std::function<void(std::span<const double>)> on_iterate;

  std::int64_t iteration_cap(NodeId n) const;
  // Throws std::invalid_argument on a non-positive tolerance or cap.
  void validate() const;
};

struct SolveReport {
  Vector x;
  std::int64_t iterations = 0;
  // ||L x - b|| / ||b||, recomputed from x; 0 when b = 0.
  double residual = 0.0;
  double wall_time = 0.0;
  Method method = Method::Cg;
  bool converged = false;
};

// Symmetric linear operator approximating L^+ on the per-component zero-sum
// subspace.
class Preconditioner {
 public:
  virtual ~Preconditioner() = default;
  virtual void apply(std::span<const double> r, std::span<double> z) const = 0;

  Vector apply(std::span<const double> r) const {
    Vector z(r.size());
    apply(r, z);
    return z;
  }
};

// Subtracts each connected component's mean.
Vector project_zero_mean(std::span<const double> y,
                         const ComponentLabeling& comps);
void project_zero_mean_inplace(std::span<double> y,
                               const ComponentLabeling& comps);

// Preconditioned conjugate gradient on L x = b. `b` must already be
// zero-sum per component. Hitting the iteration cap is reported through
// `converged = false`, never thrown.
SolveReport cg_solve(const Graph& g, std::span<const double> b,
                     const SolverConfig& cfg,
                     const Preconditioner* pre = nullptr);

// z = P D^{-1} P r, P the zero-mean projection. Isolated nodes pass through
// unscaled.
std::unique_ptr<Preconditioner> build_jacobi_precond(const Graph& g);

// Solves L x = P y with the chosen method, P the per-component zero-mean
// projection, so every method agrees with x = L^+ y.
SolveReport solve_lap(const Graph& g, std::span<const double> y, Method method,
                      const SolverConfig& cfg = {});

}  // namespace nvd
