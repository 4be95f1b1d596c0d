#include "nvd/bench.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "nvd/metrics.hpp"
#include "nvd/rng.hpp"

namespace nvd {
namespace {

constexpr const char* kColumns[] = {
    "model",     "n",       "m",         "avg_degree",         "method",
    "mean_time", "sd_time", "runs_kept", "converged_fraction", "seed"};

std::string fmt(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

template <class T>
T parse_field(const std::string& s, const char* column) {
  T v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument(std::string("bad value '") + s + "' in column " + column);
  }
  return v;
}

nlohmann::json to_json(const BenchRecord& r) {
  return {{"model", r.model},
          {"n", r.n},
          {"m", r.m},
          {"avg_degree", r.avg_degree},
          {"method", r.method},
          {"mean_time", r.mean_time},
          {"sd_time", r.sd_time},
          {"runs_kept", r.runs_kept},
          {"converged_fraction", r.converged_fraction},
          {"seed", r.seed}};
}

BenchRecord run_cell(const Graph& g, Method method, const SweepOptions& options,
                     std::uint64_t cell_seed) {
  const auto [a, b] = bench_vectors(g.num_nodes(), cell_seed);
  SolverConfig cfg = options.solver;
  cfg.seed = mix_seed(cell_seed, 0x5EED);
  BenchRecord record = time_distance(g, a, b, method, options.protocol, cfg);
  record.model = std::string(model_name(options.model));
  record.seed = cell_seed;
  return record;
}

}  // namespace

TimingSummary summarize_times(std::span<const double> times,
                              double outlier_factor) {
  if (times.empty()) throw std::invalid_argument("summarize_times: no runs");
  double mean_all = 0.0;
  for (double t : times) mean_all += t;
  mean_all /= static_cast<double>(times.size());

  std::vector<double> kept;
  for (double t : times) {
    if (t <= outlier_factor * mean_all) kept.push_back(t);
  }
  TimingSummary s;
  s.kept = static_cast<int>(kept.size());
  for (double t : kept) s.mean += t;
  s.mean /= static_cast<double>(kept.size());
  if (kept.size() > 1) {
    double ss = 0.0;
    for (double t : kept) ss += (t - s.mean) * (t - s.mean);
    s.sd = std::sqrt(ss / static_cast<double>(kept.size() - 1));
  }
  return s;
}

BenchRecord time_distance(const Graph& g, std::span<const double> a,
                          std::span<const double> b, Method method,
                          const RunProtocol& protocol, const SolverConfig& cfg) {
  if (protocol.repetitions < 1) {
    throw std::invalid_argument("RunProtocol.repetitions must be >= 1");
  }
  for (int i = 0; i < protocol.warmup; ++i) (void)ge_distance(g, a, b, method, cfg);

  std::vector<double> times;
  int converged = 0;
  for (int i = 0; i < protocol.repetitions; ++i) {
    const auto start = std::chrono::steady_clock::now();
    const DistanceResult r = ge_distance(g, a, b, method, cfg);
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    // steady_clock can report zero for sub-tick runs; times must stay positive.
    times.push_back(std::max(elapsed, 1e-9));
    converged += r.report.converged ? 1 : 0;
  }
  const TimingSummary s = summarize_times(times, protocol.outlier_factor);

  BenchRecord record;
  record.n = g.num_nodes();
  record.m = g.num_edges();
  record.avg_degree = 2.0 * static_cast<double>(g.num_edges()) / g.num_nodes();
  record.method = std::string(method_name(method));
  record.mean_time = s.mean;
  record.sd_time = s.sd;
  record.runs_kept = s.kept;
  record.converged_fraction = static_cast<double>(converged) / protocol.repetitions;
  record.seed = cfg.seed;
  return record;
}

GenSpec spec_for_degree(Model model, NodeId n, double avg_degree,
                        std::uint64_t seed, const ModelParams& params) {
  GenSpec spec{.model = model, .n = n, .seed = seed};
  const std::int64_t pairs = static_cast<std::int64_t>(n) * (n - 1) / 2;
  switch (model) {
    case Model::ER:
      spec.m = std::min<std::int64_t>(std::llround(n * avg_degree / 2.0), pairs);
      break;
    case Model::BA:
      spec.k = static_cast<int>(std::clamp<long long>(std::llround(avg_degree / 2.0), 1, n - 1));
      break;
    case Model::WS: {
      long long k = 2 * std::llround(avg_degree / 2.0);
      k = std::max(k, 2LL);
      if (k >= n) k = (n - 1) % 2 == 0 ? n - 1 : n - 2;
      spec.k = static_cast<int>(k);
      spec.p = params.ws_rewire;
      break;
    }
    case Model::SBM: {
      const int groups = std::clamp(params.sbm_groups, 1, static_cast<int>(n));
      const double s = static_cast<double>(n) / groups;
      const double ratio = groups == 1 ? 1.0 : params.sbm_in_out_ratio;
      const double p_out = avg_degree / (ratio * (s - 1.0) + (n - s));
      spec.groups = groups;
      spec.p_out = std::min(p_out, 1.0);
      spec.p_in = std::min(ratio * p_out, 1.0);
      break;
    }
  }
  return spec;
}

std::pair<Vector, Vector> bench_vectors(NodeId n, std::uint64_t cell_seed) {
  Rng rng(mix_seed(cell_seed, 0xAB));
  Vector a(static_cast<std::size_t>(n));
  Vector b(static_cast<std::size_t>(n));
  for (double& v : a) v = rng.uniform();
  for (double& v : b) v = rng.uniform();
  return {std::move(a), std::move(b)};
}

std::vector<BenchRecord> bench_size_sweep(std::span<const NodeId> sizes,
                                          double avg_degree,
                                          const SweepOptions& options) {
  std::vector<BenchRecord> records;
  for (NodeId n : sizes) {
    const std::uint64_t cell_seed = mix_seed(options.seed, static_cast<std::uint64_t>(n));
    const Graph g = generate(
        spec_for_degree(options.model, n, avg_degree, cell_seed, options.params));
    for (Method method : options.methods) {
      if (method == Method::Baseline && n > options.solver.dense_cap) continue;
      records.push_back(run_cell(g, method, options, cell_seed));
    }
  }
  return records;
}

std::vector<BenchRecord> bench_density_sweep(NodeId n,
                                             std::span<const double> degrees,
                                             const SweepOptions& options) {
  std::vector<BenchRecord> records;
  for (double degree : degrees) {
    const std::uint64_t cell_seed = mix_seed(
        options.seed, static_cast<std::uint64_t>(n) * 1000003ULL +
                          static_cast<std::uint64_t>(std::llround(degree * 1000.0)));
    const Graph g = generate(
        spec_for_degree(options.model, n, degree, cell_seed, options.params));
    for (Method method : options.methods) {
      if (method == Method::Baseline && n > options.solver.dense_cap) continue;
      records.push_back(run_cell(g, method, options, cell_seed));
    }
  }
  return records;
}

PowerFit fit_exponent(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("fit_exponent: length mismatch");
  if (x.size() < 3) throw std::invalid_argument("fit_exponent: need at least 3 points");
  const std::size_t k = x.size();
  std::vector<double> lx(k), ly(k);
  for (std::size_t i = 0; i < k; ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
      throw std::invalid_argument("fit_exponent: inputs must be positive");
    }
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(k);
  my /= static_cast<double>(k);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_exponent: all x values are equal");
  PowerFit fit;
  fit.exponent = sxy / sxx;
  fit.intercept = my - fit.exponent * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double e = ly[i] - (fit.intercept + fit.exponent * lx[i]);
    ss_res += e * e;
  }
  fit.r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

ResultFormat parse_format(std::string_view name) {
  if (name == "csv") return ResultFormat::Csv;
  if (name == "json") return ResultFormat::Json;
  throw std::invalid_argument("unknown format '" + std::string(name) + "' (expected csv|json)");
}

void emit_results(std::span<const BenchRecord> records, ResultFormat format,
                  std::ostream& out) {
  if (format == ResultFormat::Json) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : records) arr.push_back(to_json(r));
    out << arr.dump(2) << '\n';
    return;
  }
  for (std::size_t i = 0; i < std::size(kColumns); ++i) {
    out << (i ? "," : "") << kColumns[i];
  }
  out << '\n';
  for (const auto& r : records) {
    out << r.model << ',' << r.n << ',' << r.m << ',' << fmt(r.avg_degree) << ','
        << r.method << ',' << fmt(r.mean_time) << ',' << fmt(r.sd_time) << ','
        << r.runs_kept << ',' << fmt(r.converged_fraction) << ',' << r.seed << '\n';
  }
}

std::vector<BenchRecord> parse_results(std::istream& in, ResultFormat format) {
  std::vector<BenchRecord> records;
  if (format == ResultFormat::Json) {
    const nlohmann::json arr = nlohmann::json::parse(in);
    for (const auto& j : arr) {
      BenchRecord r;
      r.model = j.at("model").get<std::string>();
      r.n = j.at("n").get<NodeId>();
      r.m = j.at("m").get<std::int64_t>();
      r.avg_degree = j.at("avg_degree").get<double>();
      r.method = j.at("method").get<std::string>();
      r.mean_time = j.at("mean_time").get<double>();
      r.sd_time = j.at("sd_time").get<double>();
      r.runs_kept = j.at("runs_kept").get<int>();
      r.converged_fraction = j.at("converged_fraction").get<double>();
      r.seed = j.at("seed").get<std::uint64_t>();
      records.push_back(std::move(r));
    }
    return records;
  }

  std::string line;
  if (!std::getline(in, line)) return records;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> header;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) header.push_back(cell);
  }
  if (header.size() != std::size(kColumns) ||
      !std::equal(header.begin(), header.end(), std::begin(kColumns))) {
    throw std::invalid_argument("unexpected CSV header: " + line);
  }
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != std::size(kColumns)) {
      throw std::invalid_argument("CSV row has " + std::to_string(cells.size()) +
                                  " fields: " + line);
    }
    BenchRecord r;
    r.model = cells[0];
    r.n = parse_field<NodeId>(cells[1], "n");
    r.m = parse_field<std::int64_t>(cells[2], "m");
    r.avg_degree = parse_field<double>(cells[3], "avg_degree");
    r.method = cells[4];
    r.mean_time = parse_field<double>(cells[5], "mean_time");
    r.sd_time = parse_field<double>(cells[6], "sd_time");
    r.runs_kept = parse_field<int>(cells[7], "runs_kept");
    r.converged_fraction = parse_field<double>(cells[8], "converged_fraction");
    r.seed = parse_field<std::uint64_t>(cells[9], "seed");
    records.push_back(std::move(r));
  }
  return records;
}

}  // namespace nvd
