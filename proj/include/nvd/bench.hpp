#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "nvd/generators.hpp"
#include "nvd/graph.hpp"
#include "nvd/solver.hpp"

namespace nvd {

// Timing discipline: `warmup` untimed runs, then `repetitions` timed runs;
// runs slower than outlier_factor x the mean of all timed runs are dropped
// once and the survivors averaged.
struct RunProtocol {
  int repetitions = 10;
  int warmup = 1;
  double outlier_factor = 2.0;
};

struct TimingSummary {
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation; 0 for a single survivor
  int kept = 0;
};

TimingSummary summarize_times(std::span<const double> times,
                              double outlier_factor = 2.0);

struct BenchRecord {
  std::string model;
  NodeId n = 0;
  std::int64_t m = 0;
  double avg_degree = 0.0;
  std::string method;
  double mean_time = 0.0;
  double sd_time = 0.0;
  int runs_kept = 0;
  double converged_fraction = 0.0;
  std::uint64_t seed = 0;

  friend bool operator==(const BenchRecord&, const BenchRecord&) = default;
};

// Times ge_distance(g, a, b, method). `model` and `seed` are left for the
// caller to fill in.
BenchRecord time_distance(const Graph& g, std::span<const double> a,
                          std::span<const double> b, Method method,
                          const RunProtocol& protocol,
                          const SolverConfig& cfg = {});

// Knobs used when turning a target average degree into model parameters.
struct ModelParams {
  double ws_rewire = 0.1;
  int sbm_groups = 4;
  double sbm_in_out_ratio = 10.0;
};

// ER: m = round(n d / 2). BA: k = max(1, round(d / 2)). WS: the even k
// nearest d, at least 2. SBM: p_out chosen so the expected degree is d with
// p_in = ratio * p_out.
GenSpec spec_for_degree(Model model, NodeId n, double avg_degree,
                        std::uint64_t seed, const ModelParams& params = {});

struct SweepOptions {
  Model model = Model::ER;
  std::vector<Method> methods;
  RunProtocol protocol;
  SolverConfig solver;
  ModelParams params;
  std::uint64_t seed = 1;
};

// Uniform [0, 1) node vectors for a sweep cell, derived from the cell seed.
std::pair<Vector, Vector> bench_vectors(NodeId n, std::uint64_t cell_seed);

// One record per (size, method). Baseline cells above solver.dense_cap are
// skipped.
std::vector<BenchRecord> bench_size_sweep(std::span<const NodeId> sizes,
                                          double avg_degree,
                                          const SweepOptions& options);

std::vector<BenchRecord> bench_density_sweep(NodeId n,
                                             std::span<const double> degrees,
                                             const SweepOptions& options);

struct PowerFit {
  double exponent = 0.0;
  double intercept = 0.0;  // natural log of the prefactor
  double r2 = 0.0;
};

// Least-squares line through (log x, log y). Needs at least three points,
// all positive, and two distinct x.
PowerFit fit_exponent(std::span<const double> x, std::span<const double> y);

enum class ResultFormat { Csv, Json };

ResultFormat parse_format(std::string_view name);

// Columns: model,n,m,avg_degree,method,mean_time,sd_time,runs_kept,
// converged_fraction,seed. Rows are written in the given order.
void emit_results(std::span<const BenchRecord> records, ResultFormat format,
                  std::ostream& out);

std::vector<BenchRecord> parse_results(std::istream& in, ResultFormat format);

}  // namespace nvd
