#include <benchmark/benchmark.h>

#include <vector>

#include "seqdesign/design/stopping.hpp"
#include "seqdesign/design/surface.hpp"
#include "seqdesign/models/beta_math.hpp"
#include "seqdesign/models/beta_quantile.hpp"
#include "seqdesign/models/kde.hpp"
#include "seqdesign/numeric.hpp"
#include "seqdesign/rng.hpp"

using namespace seqdesign;

namespace {

std::vector<double> normal_draws(std::size_t n, std::uint64_t seed) {
  StreamKey k;
  k.seed = seed;
  RngStream rng(k);
  std::vector<double> x(n);
  for (double& v : x) v = rng.normal();
  return x;
}

SummaryMatrix matrix_at(long n, double shift, std::size_t R) {
  SummaryMatrix m;
  m.schedule = AnalysisSchedule({1.0, 1.5, 2.0, 2.5}, n);
  m.tau_draws = 5000;
  StreamKey k;
  k.seed = 3;
  RngStream rng(k);
  for (std::size_t r = 0; r < R; ++r) {
    SummaryRow row;
    double l = shift + rng.normal();
    for (int t = 0; t < 4; ++t) {
      row.tau.push_back(clamp_prob(expit(l), m.tau_draws));
      l += 0.3 + 0.5 * rng.normal();
    }
    row.tau_P = {expit(l - 1), expit(l - 0.5), expit(l)};
    m.rows.push_back(row);
  }
  return m;
}

}  // namespace

static void BM_KdeIntervalMass(benchmark::State& state) {
  const auto x = normal_draws(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(kde_interval_mass(x, 0.1, kInf, Bandwidth::silverman));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_KdeIntervalMass)->Arg(500)->Arg(5000);

static void BM_BetaUpperQuantile(benchmark::State& state) {
  const double a = 3.0, b = 40.0, lb = log_beta(a, b);
  double u = 0.001;
  for (auto _ : state) {
    benchmark::DoNotOptimize(beta_upper_quantile(a, b, u, lb, -1.0));
    u = u < 0.02 ? u * 1.01 : 0.001;
  }
}
BENCHMARK(BM_BetaUpperQuantile);

static void BM_BetaQuantileFit(benchmark::State& state) {
  const ModelPtr model = beta_quantile_model(BetaQuantileParams{});
  const auto theta = model->theta_for_delta(0.03);
  StreamKey k;
  k.seed = 11;
  k.lane = Lane::data;
  DataBlock data;
  model->generate(theta, k, 0, 40, data);
  MCMCSettings mc;
  mc.burnin = 200;
  mc.retained = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(model->fit(DataView(data), mc, k.with_lane(Lane::posterior)));
}
BENCHMARK(BM_BetaQuantileFit)->Arg(500)->Arg(5000)->Unit(benchmark::kMillisecond);

static void BM_NuRate(benchmark::State& state) {
  const SummaryMatrix m = matrix_at(30, 0.5, 10000);
  ThresholdSet th;
  th.gamma = {0.999, 0.995, 0.99, 0.95};
  th.rho = std::vector<double>{0.1, 0.2, 0.3};
  const auto pol = StoppingPolicy::standard(4, th);
  for (auto _ : state) benchmark::DoNotOptimize(nu_rate(m, th, pol));
}
BENCHMARK(BM_NuRate)->Unit(benchmark::kMicrosecond);

static void BM_FindMinN(benchmark::State& state) {
  const SummaryMatrix a = matrix_at(20, 0.0, 10000);
  SummaryMatrix b = matrix_at(40, 1.0, 10000);
  const LogitSurface s = fit_logit_surface(a, b);
  ThresholdSet th;
  th.gamma = {0.999, 0.995, 0.99, 0.95};
  th.rho = std::vector<double>{0.1, 0.2, 0.3};
  const auto pol = StoppingPolicy::standard(4, th);
  for (auto _ : state) {
    try {
      benchmark::DoNotOptimize(find_min_n(s, th, pol, 0.8, 10, 200).n);
    } catch (const std::exception&) {
    }
  }
}
BENCHMARK(BM_FindMinN)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
