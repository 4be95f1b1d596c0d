#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "nvd/bench.hpp"

namespace nvd {
namespace {

BenchRecord sample_record() {
  return {.model = "er", .n = 1000, .m = 5000, .avg_degree = 10.0, .method = "approx_chol",
          .mean_time = 0.0123456789012345, .sd_time = 1.5e-4, .runs_kept = 9,
          .converged_fraction = 1.0, .seed = 18446744073709551615ULL};
}

TEST(SummarizeTimes, DropsOutliersOnce) {
  const std::vector<double> t = {1, 1, 1, 10};
  const TimingSummary s = summarize_times(t);
  EXPECT_DOUBLE_EQ(s.mean, 1.0);
  EXPECT_EQ(s.kept, 3);
  EXPECT_DOUBLE_EQ(s.sd, 0.0);
}

TEST(SummarizeTimes, SingleRunHasZeroSd) {
  const std::vector<double> t = {0.5};
  const TimingSummary s = summarize_times(t);
  EXPECT_DOUBLE_EQ(s.mean, 0.5);
  EXPECT_EQ(s.sd, 0.0);
  EXPECT_EQ(s.kept, 1);
}

TEST(SummarizeTimes, NotIterated) {
  // Mean 6.43; only 30 exceeds 12.86. A second pass would then drop 10 too.
  const std::vector<double> t = {1, 1, 1, 1, 1, 10, 30};
  const TimingSummary s = summarize_times(t);
  EXPECT_EQ(s.kept, 6);
  EXPECT_DOUBLE_EQ(s.mean, 15.0 / 6.0);
  EXPECT_NEAR(s.sd, std::sqrt(13.5), 1e-12);
  EXPECT_THROW((void)summarize_times(std::vector<double>{}), std::invalid_argument);
}

TEST(TimeDistance, RecordShape) {
  const Graph g = gen_er(200, 1000, 1);
  const auto [a, b] = bench_vectors(200, 3);
  const RunProtocol protocol{.repetitions = 3, .warmup = 1};
  const BenchRecord r = time_distance(g, a, b, Method::Cg, protocol);
  EXPECT_EQ(r.n, 200);
  EXPECT_EQ(r.m, 1000);
  EXPECT_DOUBLE_EQ(r.avg_degree, 10.0);
  EXPECT_EQ(r.method, "cg");
  EXPECT_GT(r.mean_time, 0.0);
  EXPECT_GE(r.runs_kept, 1);
  EXPECT_LE(r.runs_kept, 3);
  EXPECT_EQ(r.converged_fraction, 1.0);
}

TEST(SpecForDegree, HitsTargetDensity) {
  EXPECT_EQ(spec_for_degree(Model::ER, 10000, 4, 1).m, 20000);
  EXPECT_EQ(spec_for_degree(Model::BA, 1000, 10, 1).k, 5);
  EXPECT_EQ(spec_for_degree(Model::BA, 1000, 1, 1).k, 1);
  EXPECT_EQ(spec_for_degree(Model::WS, 1000, 10, 1).k, 10);
  EXPECT_EQ(spec_for_degree(Model::WS, 1000, 1, 1).k, 2);
  const GenSpec sbm = spec_for_degree(Model::SBM, 4000, 8, 1);
  EXPECT_NEAR(sbm.p_in / sbm.p_out, 10.0, 1e-12);
  const double s = 1000.0;
  EXPECT_NEAR(sbm.p_in * (s - 1) + sbm.p_out * (4000 - s), 8.0, 1e-9);
}

TEST(Sweeps, SingleSizeSingleRecord) {
  SweepOptions opts{.model = Model::ER, .methods = {Method::Cg},
                    .protocol = {.repetitions = 2}};
  const std::vector<NodeId> sizes = {100};
  const auto records = bench_size_sweep(sizes, 6.0, opts);
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0].model, "er");
  EXPECT_EQ(records[0].m, 300);
}

TEST(Sweeps, BaselineSkippedAboveCap) {
  SweepOptions opts{.model = Model::WS, .methods = {Method::Baseline, Method::Cg},
                    .protocol = {.repetitions = 1}};
  opts.solver.dense_cap = 150;
  const std::vector<NodeId> sizes = {100, 300};
  const auto records = bench_size_sweep(sizes, 4.0, opts);
  ASSERT_EQ(records.size(), 3u);
  int baseline = 0;
  for (const auto& r : records) {
    if (r.method == "baseline") {
      ++baseline;
      EXPECT_LE(r.n, 150);
    }
  }
  EXPECT_EQ(baseline, 1);
}

TEST(Sweeps, DeterministicApartFromTimes) {
  SweepOptions opts{.model = Model::SBM, .methods = {Method::Cg, Method::ApproxChol},
                    .protocol = {.repetitions = 1}, .seed = 42};
  const std::vector<double> degrees = {2, 8};
  auto r1 = bench_density_sweep(500, degrees, opts);
  auto r2 = bench_density_sweep(500, degrees, opts);
  ASSERT_EQ(r1.size(), 4u);
  for (std::size_t i = 0; i < r1.size(); ++i) {
    EXPECT_EQ(r1[i].m, r2[i].m);
    EXPECT_EQ(r1[i].seed, r2[i].seed);
    EXPECT_EQ(r1[i].method, r2[i].method);
    EXPECT_EQ(r1[i].n, 500);
  }
  EXPECT_EQ(bench_vectors(300, 7), bench_vectors(300, 7));
}

TEST(FitExponent, RecoversPlantedPowerLaws) {
  const std::vector<double> n = {1e3, 3e3, 1e4, 3e4, 1e5};
  for (double k : {0.5, 1.0, 1.12, 2.0, 2.6, 3.0}) {
    std::vector<double> t;
    for (double x : n) t.push_back(3e-7 * std::pow(x, k));
    const PowerFit f = fit_exponent(n, t);
    EXPECT_NEAR(f.exponent, k, 1e-9);
    EXPECT_NEAR(f.intercept, std::log(3e-7), 1e-8);
    EXPECT_NEAR(f.r2, 1.0, 1e-12);
  }
}

TEST(FitExponent, Examples) {
  const std::vector<double> n = {10, 100, 1000};
  const PowerFit sq = fit_exponent(n, std::vector<double>{500, 50000, 5000000});
  EXPECT_NEAR(sq.exponent, 2.0, 1e-12);
  EXPECT_NEAR(sq.r2, 1.0, 1e-12);
  const PowerFit flat = fit_exponent(n, std::vector<double>{4, 4, 4});
  EXPECT_NEAR(flat.exponent, 0.0, 1e-12);
}

TEST(FitExponent, RealNetworkRuntimeTable) {
  const std::vector<double> n = {145, 450, 1005, 3214, 7624, 11381, 21739, 87569, 3774768,
                                 18268992};
  const std::vector<double> t = {0.0023, 0.0011, 0.0068, 0.0079, 0.0149,
                                 0.0976, 2.6151, 4.3299, 59.311, 247.10};
  EXPECT_NEAR(fit_exponent(n, t).exponent, 1.12, 0.1);
}

TEST(FitExponent, RejectsBadInput) {
  const std::vector<double> two = {1, 2};
  EXPECT_THROW((void)fit_exponent(two, two), std::invalid_argument);
  const std::vector<double> x = {1, 2, 3};
  EXPECT_THROW((void)fit_exponent(x, std::vector<double>{1, 0, 2}), std::invalid_argument);
  EXPECT_THROW((void)fit_exponent(std::vector<double>{-1, 2, 3}, x), std::invalid_argument);
  EXPECT_THROW((void)fit_exponent(std::vector<double>{2, 2, 2}, x), std::invalid_argument);
  EXPECT_THROW((void)fit_exponent(x, two), std::invalid_argument);
}

TEST(EmitResults, CsvShape) {
  std::ostringstream empty;
  emit_results({}, ResultFormat::Csv, empty);
  EXPECT_EQ(empty.str(),
            "model,n,m,avg_degree,method,mean_time,sd_time,runs_kept,converged_fraction,seed\n");
  std::ostringstream one;
  const std::vector<BenchRecord> recs = {sample_record()};
  emit_results(recs, ResultFormat::Csv, one);
  const std::string s = one.str();
  EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 2);
}

TEST(EmitResults, RoundTrip) {
  std::vector<BenchRecord> recs = {sample_record(), sample_record()};
  recs[1].model = "sbm";
  recs[1].method = "cg";
  recs[1].mean_time = 1.0 / 3.0;
  for (ResultFormat f : {ResultFormat::Csv, ResultFormat::Json}) {
    std::stringstream buf;
    emit_results(recs, f, buf);
    EXPECT_EQ(parse_results(buf, f), recs);
  }
  EXPECT_EQ(parse_format("json"), ResultFormat::Json);
  EXPECT_THROW((void)parse_format("xml"), std::invalid_argument);
}

}  // namespace
}  // namespace nvd
