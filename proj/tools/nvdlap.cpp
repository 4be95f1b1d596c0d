// nvdlap: network distances through Laplacian solvers, plus the benchmark
// and data plumbing around them.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "nvd/bench.hpp"
#include "nvd/generators.hpp"
#include "nvd/io.hpp"
#include "nvd/metrics.hpp"

namespace {

using namespace nvd;

constexpr int kExitInput = 1;
constexpr int kExitNotConverged = 2;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return in;
}

// Writes to `path`, or stdout for "" / "-".
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw InputError("cannot write '" + path + "'");
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

struct GraphArgs {
  std::string path;
  bool unweighted = false;
  bool integer_ids = false;
};

void add_graph_args(CLI::App* cmd, GraphArgs& args) {
  cmd->add_option("--graph", args.path, "Edge list 'u v [w]'")->required();
  cmd->add_flag("--unweighted", args.unweighted, "Ignore weights, merged duplicates included");
  cmd->add_flag("--integer-ids", args.integer_ids,
                "Treat node labels as 0-based integer ids instead of remapping them");
}

LoadedGraph load_graph(const GraphArgs& args) {
  auto in = open_in(args.path);
  EdgeListOptions opts;
  opts.unweighted = args.unweighted;
  opts.labels = args.integer_ids ? LabelMode::Integer : LabelMode::FirstAppearance;
  return read_edge_list(in, opts);
}

struct SolverArgs {
  std::string method = "approx_chol";
  double tol = 1e-10;
  std::int64_t max_iters = 0;
  std::int64_t extra = -1;
  std::uint64_t seed = 1;
  bool strict = false;
  bool verbose = false;
};

void add_solver_args(CLI::App* cmd, SolverArgs& args) {
  cmd->add_option("--method", args.method,
                  "baseline, cg, cg_jacobi, aug_tree or approx_chol")
      ->capture_default_str();
  cmd->add_option("--tol", args.tol, "Relative residual tolerance")->capture_default_str();
  cmd->add_option("--max-iters", args.max_iters, "Iteration cap (default 10 n)");
  cmd->add_option("--extra", args.extra, "Off-tree edges for aug_tree (default ceil(sqrt n))");
  cmd->add_option("--seed", args.seed, "Seed for randomised preconditioners")
      ->capture_default_str();
  cmd->add_flag("--strict", args.strict, "Exit with status 2 if the solver did not converge");
  cmd->add_flag("--verbose", args.verbose, "Print the solve report to stderr");
}

SolverConfig make_config(const SolverArgs& args) {
  SolverConfig cfg;
  cfg.rel_tolerance = args.tol;
  cfg.seed = args.seed;
  if (args.max_iters > 0) cfg.max_iters = args.max_iters;
  if (args.extra >= 0) cfg.aug_tree_extra = args.extra;
  cfg.validate();
  return cfg;
}

int finish(const DistanceResult& r, const SolverArgs& args, double value) {
  std::printf("%.12g\n", value);
  const SolveReport& rep = r.report;
  if (args.verbose || !rep.converged) {
    std::fprintf(stderr, "method=%s iterations=%lld residual=%.3g converged=%s time=%.6fs\n",
                 std::string(method_name(rep.method)).c_str(),
                 static_cast<long long>(rep.iterations), rep.residual,
                 rep.converged ? "yes" : "no", rep.wall_time);
  }
  if (r.negative_warning) {
    std::fprintf(stderr, "warning: squared distance %.3g is negative beyond round-off\n",
                 r.squared);
  }
  if (!rep.converged) {
    std::fprintf(stderr, "warning: solver stopped before reaching the tolerance\n");
    if (args.strict) return kExitNotConverged;
  }
  return 0;
}

NodeId lookup(const LabelMap& labels, const std::string& name) {
  auto id = labels.find(name);
  if (!id) throw InputError("node '" + name + "' is not in the graph");
  return *id;
}

template <class T>
std::vector<T> split_list(const std::string& text, T (*parse)(const std::string&)) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(parse(item));
  }
  if (out.empty()) throw InputError("empty list '" + text + "'");
  return out;
}

double parse_number(const std::string& s) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != s.size()) throw InputError("'" + s + "' is not a number");
  return v;
}

Method parse_method_str(const std::string& s) { return parse_method(s); }

double field(const BenchRecord& r, const std::string& name) {
  if (name == "n") return r.n;
  if (name == "m") return static_cast<double>(r.m);
  if (name == "avg_degree") return r.avg_degree;
  if (name == "mean_time") return r.mean_time;
  if (name == "sd_time") return r.sd_time;
  throw InputError("unknown column '" + name + "'");
}

int run(int argc, char** argv) {
  CLI::App app{"Network variance distances through fast Laplacian solvers"};
  app.require_subcommand(1);

  // generate
  GenSpec gen;
  std::string gen_model = "er", gen_out, gen_groups_out;
  auto* generate_cmd = app.add_subcommand("generate", "Write a synthetic graph as an edge list");
  generate_cmd->add_option("--model", gen_model, "er, ba, ws or sbm")->required();
  generate_cmd->add_option("--n", gen.n, "Number of nodes")->required();
  generate_cmd->add_option("--m", gen.m, "Edges (er)");
  generate_cmd->add_option("--k", gen.k, "Links per new node (ba) or lattice degree (ws)");
  generate_cmd->add_option("--p", gen.p, "Rewiring probability (ws)");
  generate_cmd->add_option("--groups", gen.groups, "Number of blocks (sbm)");
  generate_cmd->add_option("--pin", gen.p_in, "Within-block edge probability (sbm)");
  generate_cmd->add_option("--pout", gen.p_out, "Between-block edge probability (sbm)");
  generate_cmd->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
  generate_cmd->add_option("--out", gen_out, "Output file (default stdout)");
  generate_cmd->add_option("--groups-out", gen_groups_out,
                           "Also write 'node block' lines (sbm)");

  // distance
  GraphArgs dist_graph;
  SolverArgs dist_solver;
  std::string vec_a, vec_b;
  auto* distance_cmd = app.add_subcommand("distance", "Generalized Euclidean distance");
  add_graph_args(distance_cmd, dist_graph);
  distance_cmd->add_option("--vec-a", vec_a, "Lines 'node value'")->required();
  distance_cmd->add_option("--vec-b", vec_b, "Lines 'node value'")->required();
  add_solver_args(distance_cmd, dist_solver);

  // resistance
  GraphArgs res_graph;
  SolverArgs res_solver;
  std::string res_u, res_v;
  auto* resistance_cmd = app.add_subcommand("resistance", "Effective resistance between two nodes");
  add_graph_args(resistance_cmd, res_graph);
  resistance_cmd->add_option("--u", res_u, "Node label")->required();
  resistance_cmd->add_option("--v", res_v, "Node label")->required();
  add_solver_args(resistance_cmd, res_solver);

  // polarization
  GraphArgs pol_graph;
  SolverArgs pol_solver;
  std::string pol_groups;
  bool no_normalize = false;
  auto* polarization_cmd =
      app.add_subcommand("polarization", "Distance between two node classes");
  add_graph_args(polarization_cmd, pol_graph);
  polarization_cmd->add_option("--groups", pol_groups, "Lines 'node class'")->required();
  polarization_cmd->add_flag("--no-normalize", no_normalize,
                             "Use raw 0/1 indicators instead of dividing by class size");
  add_solver_args(polarization_cmd, pol_solver);

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "Timing sweeps");
  bench_cmd->require_subcommand(1);
  std::string b_model = "er", b_methods = "cg,cg_jacobi,aug_tree,approx_chol",
              b_format = "csv", b_out, b_sizes = "1000,3000,10000", b_degrees = "1,2,4,8,16,32,64";
  double b_avg_degree = 10.0;
  NodeId b_n = 10000;
  SweepOptions sweep;
  NodeId b_cap = kDefaultDenseCap;
  auto add_bench_common = [&](CLI::App* cmd) {
    cmd->add_option("--model", b_model, "er, ba, ws or sbm")->capture_default_str();
    cmd->add_option("--methods", b_methods, "Comma-separated methods")->capture_default_str();
    cmd->add_option("--reps", sweep.protocol.repetitions, "Timed repetitions")
        ->capture_default_str();
    cmd->add_option("--warmup", sweep.protocol.warmup, "Untimed warmup runs")
        ->capture_default_str();
    cmd->add_option("--seed", sweep.seed, "Sweep seed")->capture_default_str();
    cmd->add_option("--tol", sweep.solver.rel_tolerance, "Solver tolerance")
        ->capture_default_str();
    cmd->add_option("--dense-cap", b_cap, "Largest n for the baseline")->capture_default_str();
    cmd->add_option("--format", b_format, "csv or json")->capture_default_str();
    cmd->add_option("--out", b_out, "Output file (default stdout)");
  };
  auto* size_cmd = bench_cmd->add_subcommand("size", "Vary n at a fixed average degree");
  add_bench_common(size_cmd);
  size_cmd->add_option("--sizes", b_sizes, "Comma-separated node counts")->capture_default_str();
  size_cmd->add_option("--avg-degree", b_avg_degree, "Target average degree")
      ->capture_default_str();
  auto* density_cmd = bench_cmd->add_subcommand("density", "Vary the average degree at fixed n");
  add_bench_common(density_cmd);
  density_cmd->add_option("--degrees", b_degrees, "Comma-separated average degrees")
      ->capture_default_str();
  density_cmd->add_option("--n", b_n, "Number of nodes")->capture_default_str();

  // fit
  std::string fit_input, fit_x = "n", fit_y = "mean_time", fit_method, fit_model,
                         fit_format = "csv";
  auto* fit_cmd = app.add_subcommand("fit", "Log-log exponent of benchmark results");
  fit_cmd->add_option("--input", fit_input, "Results written by bench")->required();
  fit_cmd->add_option("--x", fit_x, "n, m or avg_degree")->capture_default_str();
  fit_cmd->add_option("--y", fit_y, "mean_time or sd_time")->capture_default_str();
  fit_cmd->add_option("--method", fit_method, "Only rows of this method");
  fit_cmd->add_option("--model", fit_model, "Only rows of this model");
  fit_cmd->add_option("--format", fit_format, "csv or json")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  if (*generate_cmd) {
    gen.model = parse_model(gen_model);
    Output out(gen_out);
    if (gen.model == Model::SBM) {
      validate(gen);
      const SbmGraph s = gen_sbm(gen.n, gen.groups, gen.p_in, gen.p_out, gen.seed);
      write_graph(s.graph, out.stream());
      if (!gen_groups_out.empty()) {
        Output groups(gen_groups_out);
        for (NodeId u = 0; u < gen.n; ++u) groups.stream() << u << ' ' << s.groups[u] << '\n';
      }
    } else {
      write_graph(generate(gen), out.stream());
    }
    return 0;
  }

  if (*distance_cmd) {
    const LoadedGraph g = load_graph(dist_graph);
    auto in_a = open_in(vec_a);
    auto in_b = open_in(vec_b);
    const NodeVectorLoad a = read_node_vector(in_a, g.labels);
    const NodeVectorLoad b = read_node_vector(in_b, g.labels);
    for (const auto* v : {&a, &b}) {
      if (v->defaulted > 0) {
        std::fprintf(stderr, "note: %d node(s) missing from %s, set to 0\n", v->defaulted,
                     (v == &a ? vec_a : vec_b).c_str());
      }
    }
    const DistanceResult r = ge_distance(g.graph, a.values, b.values,
                                         parse_method(dist_solver.method),
                                         make_config(dist_solver));
    return finish(r, dist_solver, r.distance);
  }

  if (*resistance_cmd) {
    const LoadedGraph g = load_graph(res_graph);
    const NodeId u = lookup(g.labels, res_u);
    const NodeId v = lookup(g.labels, res_v);
    const double r = effective_resistance(g.graph, u, v, parse_method(res_solver.method),
                                          make_config(res_solver));
    std::printf("%.12g\n", r);
    return 0;
  }

  if (*polarization_cmd) {
    const LoadedGraph g = load_graph(pol_graph);
    auto in = open_in(pol_groups);
    const TwoClassLabeling groups = read_groups(in, g.labels);
    const DistanceResult r =
        polarization_score(g.graph, groups, parse_method(pol_solver.method),
                           make_config(pol_solver), !no_normalize);
    return finish(r, pol_solver, r.distance);
  }

  if (*bench_cmd) {
    sweep.model = parse_model(b_model);
    sweep.methods = split_list<Method>(b_methods, parse_method_str);
    sweep.solver.dense_cap = b_cap;
    sweep.solver.validate();
    const ResultFormat format = parse_format(b_format);
    std::vector<BenchRecord> records;
    if (*size_cmd) {
      std::vector<NodeId> sizes;
      for (double s : split_list<double>(b_sizes, parse_number)) {
        sizes.push_back(static_cast<NodeId>(s));
      }
      records = bench_size_sweep(sizes, b_avg_degree, sweep);
    } else {
      const auto degrees = split_list<double>(b_degrees, parse_number);
      records = bench_density_sweep(b_n, degrees, sweep);
    }
    Output out(b_out);
    emit_results(records, format, out.stream());
    return 0;
  }

  if (*fit_cmd) {
    auto in = open_in(fit_input);
    const auto records = parse_results(in, parse_format(fit_format));
    std::vector<double> xs, ys;
    for (const auto& r : records) {
      if (!fit_method.empty() && r.method != fit_method) continue;
      if (!fit_model.empty() && r.model != fit_model) continue;
      xs.push_back(field(r, fit_x));
      ys.push_back(field(r, fit_y));
    }
    const PowerFit f = fit_exponent(xs, ys);
    std::printf("exponent %.6f\nintercept %.6f\nr2 %.6f\npoints %zu\n", f.exponent,
                f.intercept, f.r2, xs.size());
    return 0;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    // Parse errors, bad ids, disconnected pairs and invalid parameters are
    // all problems with the input.
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInput;
  }
}
