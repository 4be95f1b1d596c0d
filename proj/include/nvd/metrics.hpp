#pragma once

#include <span>
#include <string>
#include <vector>

#include "nvd/graph.hpp"
#include "nvd/solver.hpp"

namespace nvd {

struct DistanceResult {
  double distance = 0.0;
  // y^T x before clamping; may be a round-off negative.
  double squared = 0.0;
  SolveReport report;
  // Set when squared < -1e-12 ||y||^2, i.e. the negative is larger than
  // round-off would explain.
  bool negative_warning = false;
};

// Generalized Euclidean distance sqrt((a-b)^T L^+ (a-b)), computed by
// solving L x = P (a - b) with `method` instead of forming L^+.
DistanceResult ge_distance(const Graph& g, std::span<const double> a,
                           std::span<const double> b, Method method,
                           const SolverConfig& cfg = {});

// delta(e_u, e_v)^2. Returns 0 for u == v; throws std::out_of_range for bad
// ids and std::domain_error when u and v lie in different components.
double effective_resistance(const Graph& g, NodeId u, NodeId v, Method method,
                            const SolverConfig& cfg = {});

// Node classes for a two-sided polarization measurement. `cls[u]` is 0 or 1,
// or -1 for unlabeled nodes. `names` holds the class labels in first
// appearance order and may have fewer than two entries.
struct TwoClassLabeling {
  std::vector<int> cls;
  std::vector<std::string> names;
};

// GE distance between the two class indicator vectors, each divided by its
// class size unless `normalize` is false. Throws std::invalid_argument unless
// both classes are non-empty.
DistanceResult polarization_score(const Graph& g, const TwoClassLabeling& groups,
                                  Method method, const SolverConfig& cfg = {},
                                  bool normalize = true);

}  // namespace nvd
