#include "nvd/solver.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>

#include "nvd/elimination.hpp"
#include "nvd/spanning_tree.hpp"

namespace nvd {
namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

double relative_residual(const Graph& g, std::span<const double> x,
                         std::span<const double> b) {
  const double bn = norm(b);
  if (bn == 0.0) return 0.0;
  Vector r = g.laplacian_apply(x);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return norm(r) / bn;
}

class JacobiPreconditioner final : public Preconditioner {
 public:
  explicit JacobiPreconditioner(const Graph& g)
      : inv_degree_(g.weighted_degrees()), comps_(connected_components(g)) {
    for (double& d : inv_degree_) d = d > 0.0 ? 1.0 / d : 1.0;
  }

  using Preconditioner::apply;
  void apply(std::span<const double> r, std::span<double> z) const override {
    std::copy(r.begin(), r.end(), z.begin());
    project_zero_mean_inplace(z, comps_);
    for (std::size_t i = 0; i < z.size(); ++i) z[i] *= inv_degree_[i];
    project_zero_mean_inplace(z, comps_);
  }

 private:
  Vector inv_degree_;
  ComponentLabeling comps_;
};

}  // namespace

Method parse_method(std::string_view name) {
  for (Method m : kAllMethods) {
    if (method_name(m) == name) return m;
  }
  throw std::invalid_argument(
      "unknown method '" + std::string(name) +
      "' (expected baseline|cg|cg_jacobi|aug_tree|approx_chol)");
}

std::string_view method_name(Method method) {
  switch (method) {
    case Method::Baseline: return "baseline";
    case Method::Cg: return "cg";
    case Method::CgJacobi: return "cg_jacobi";
    case Method::AugTree: return "aug_tree";
    case Method::ApproxChol: return "approx_chol";
  }
  return "?";
}

std::int64_t SolverConfig::iteration_cap(NodeId n) const {
  return max_iters.value_or(10 * static_cast<std::int64_t>(n));
}

void SolverConfig::validate() const {
  if (!(rel_tolerance > 0.0)) {
    throw std::invalid_argument("rel_tolerance must be positive");
  }
  if (max_iters && *max_iters < 1) {
    throw std::invalid_argument("max_iters must be at least 1");
  }
  if (aug_tree_extra && *aug_tree_extra < 0) {
    throw std::invalid_argument("aug_tree_extra must be non-negative");
  }
}

void project_zero_mean_inplace(std::span<double> y,
                               const ComponentLabeling& comps) {
  if (y.size() != comps.label.size()) {
    throw std::invalid_argument("project_zero_mean: length mismatch");
  }
  Vector sum(static_cast<std::size_t>(comps.count), 0.0);
  for (std::size_t i = 0; i < y.size(); ++i) sum[comps.label[i]] += y[i];
  for (NodeId c = 0; c < comps.count; ++c) sum[c] /= comps.sizes[c];
  for (std::size_t i = 0; i < y.size(); ++i) y[i] -= sum[comps.label[i]];
}

Vector project_zero_mean(std::span<const double> y,
                         const ComponentLabeling& comps) {
  Vector out(y.begin(), y.end());
  project_zero_mean_inplace(out, comps);
  return out;
}

SolveReport cg_solve(const Graph& g, std::span<const double> b,
                     const SolverConfig& cfg, const Preconditioner* pre) {
  cfg.validate();
  const auto n = static_cast<std::size_t>(g.num_nodes());
  if (b.size() != n) throw std::invalid_argument("cg_solve: length mismatch");
  for (double v : b) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("cg_solve: right-hand side has non-finite entries");
    }
  }
  const auto start = std::chrono::steady_clock::now();

  SolveReport report;
  report.method = Method::Cg;
  report.x.assign(n, 0.0);
  const double bnorm = norm(b);
  if (bnorm == 0.0) {
    report.converged = true;
    report.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
  }

  const double target = cfg.rel_tolerance * bnorm;
  const std::int64_t cap = cfg.iteration_cap(g.num_nodes());
  Vector& x = report.x;
  Vector r(b.begin(), b.end());
  Vector z(n), p(n), q(n);
  auto precondition = [&] {
    if (pre) {
      pre->apply(r, z);
    } else {
      z = r;
    }
  };
  precondition();
  p = z;
  double rz = dot(r, z);
  double rnorm = bnorm;

  std::int64_t it = 0;
  while (it < cap) {
    g.laplacian_apply(p, q);
    const double pq = dot(p, q);
    if (!(pq > 0.0)) break;  // p has collapsed onto the kernel
    const double alpha = rz / pq;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * q[i];
    }
    ++it;
    if (cfg.on_iterate) cfg.on_iterate(x);
    rnorm = norm(r);
    if (rnorm <= target) {
      // Confirm against the true residual before stopping; on drift restart
      // from it.
      g.laplacian_apply(x, r);
      for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
      rnorm = norm(r);
      if (rnorm <= target) break;
      precondition();
      p = z;
      rz = dot(r, z);
      continue;
    }
    precondition();
    const double rz_next = dot(r, z);
    const double beta = rz_next / rz;
    rz = rz_next;
    for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }

  report.iterations = it;
  report.residual = relative_residual(g, x, b);
  report.converged = report.residual <= cfg.rel_tolerance;
  report.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::unique_ptr<Preconditioner> build_jacobi_precond(const Graph& g) {
  return std::make_unique<JacobiPreconditioner>(g);
}

SolveReport solve_lap(const Graph& g, std::span<const double> y, Method method,
                      const SolverConfig& cfg) {
  cfg.validate();
  if (y.size() != static_cast<std::size_t>(g.num_nodes())) {
    throw std::invalid_argument("solve_lap: vector length " +
                                std::to_string(y.size()) + " != node count " +
                                std::to_string(g.num_nodes()));
  }
  const auto start = std::chrono::steady_clock::now();
  const ComponentLabeling comps = connected_components(g);
  const Vector b = project_zero_mean(y, comps);

  SolveReport report;
  switch (method) {
    case Method::Baseline: {
      for (double v : b) {
        if (!std::isfinite(v)) {
          throw std::invalid_argument("solve_lap: input has non-finite entries");
        }
      }
      const DenseMatrix pinv = pinv_laplacian(g, cfg.dense_cap);
      report.x = pinv.multiply(b);
      report.residual = relative_residual(g, report.x, b);
      report.converged = report.residual <= cfg.rel_tolerance;
      break;
    }
    case Method::Cg:
      report = cg_solve(g, b, cfg);
      break;
    case Method::CgJacobi: {
      const auto pre = build_jacobi_precond(g);
      report = cg_solve(g, b, cfg, pre.get());
      break;
    }
    case Method::AugTree: {
      const SpanningTree tree = build_spanning_tree(g);
      const auto pre = build_aug_tree_precond(
          g, tree, cfg.aug_tree_extra.value_or(default_aug_tree_extra(g.num_nodes())),
          cfg.seed);
      report = cg_solve(g, b, cfg, pre.get());
      break;
    }
    case Method::ApproxChol: {
      const auto pre = approx_chol_factor(g, cfg);
      report = cg_solve(g, b, cfg, pre.get());
      break;
    }
  }
  project_zero_mean_inplace(report.x, comps);
  report.method = method;
  report.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace nvd
