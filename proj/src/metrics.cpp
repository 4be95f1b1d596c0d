#include "nvd/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace nvd {

DistanceResult ge_distance(const Graph& g, std::span<const double> a,
                           std::span<const double> b, Method method,
                           const SolverConfig& cfg) {
  const auto n = static_cast<std::size_t>(g.num_nodes());
  if (a.size() != n || b.size() != n) {
    throw std::invalid_argument("ge_distance: vector lengths must equal node count " +
                                std::to_string(n));
  }
  Vector y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = a[i] - b[i];

  DistanceResult out;
  out.report = solve_lap(g, y, method, cfg);
  const Vector py = project_zero_mean(y, connected_components(g));
  double q = 0.0;
  double yy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    q += py[i] * out.report.x[i];
    yy += py[i] * py[i];
  }
  out.squared = q;
  out.negative_warning = q < -1e-12 * yy;
  out.distance = std::sqrt(std::max(q, 0.0));
  return out;
}

double effective_resistance(const Graph& g, NodeId u, NodeId v, Method method,
                            const SolverConfig& cfg) {
  const NodeId n = g.num_nodes();
  if (u < 0 || u >= n || v < 0 || v >= n) {
    throw std::out_of_range("effective_resistance: node id out of range [0, " +
                            std::to_string(n) + ")");
  }
  if (u == v) return 0.0;
  const ComponentLabeling comps = connected_components(g);
  if (comps.label[u] != comps.label[v]) {
    throw std::domain_error("effective_resistance: nodes " + std::to_string(u) +
                            " and " + std::to_string(v) +
                            " are in different components (infinite resistance)");
  }
  Vector a(static_cast<std::size_t>(n), 0.0);
  Vector b(static_cast<std::size_t>(n), 0.0);
  a[u] = 1.0;
  b[v] = 1.0;
  const DistanceResult r = ge_distance(g, a, b, method, cfg);
  return std::max(r.squared, 0.0);
}

DistanceResult polarization_score(const Graph& g, const TwoClassLabeling& groups,
                                  Method method, const SolverConfig& cfg,
                                  bool normalize) {
  const auto n = static_cast<std::size_t>(g.num_nodes());
  if (groups.cls.size() != n) {
    throw std::invalid_argument("polarization_score: labeling length mismatch");
  }
  double size[2] = {0.0, 0.0};
  for (int c : groups.cls) {
    if (c == 0 || c == 1) size[c] += 1.0;
  }
  if (size[0] == 0.0 || size[1] == 0.0) {
    throw std::invalid_argument(
        "polarization_score: need two non-empty classes, found " +
        std::to_string(static_cast<int>(size[0] > 0) + static_cast<int>(size[1] > 0)));
  }
  Vector a(n, 0.0);
  Vector b(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (groups.cls[i] == 0) a[i] = normalize ? 1.0 / size[0] : 1.0;
    if (groups.cls[i] == 1) b[i] = normalize ? 1.0 / size[1] : 1.0;
  }
  return ge_distance(g, a, b, method, cfg);
}

}  // namespace nvd
