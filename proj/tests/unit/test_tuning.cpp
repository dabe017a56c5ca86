#include <algorithm>

#include <gtest/gtest.h>

#include "seqdesign/design/tuning.hpp"
#include "seqdesign/error.hpp"
#include "synthetic.hpp"

using namespace seqdesign;

namespace {

ThresholdSet final_only(std::size_t T) {
  ThresholdSet th;
  th.gamma.assign(T, 1.0);
  return th;
}

// Oracle: scan sorted tau_T and count exceedances directly.
double smallest_feasible(const SummaryMatrix& m, double Gamma0) {
  std::vector<double> v;
  for (const auto& r : m.rows) v.push_back(r.tau.back());
  v.push_back(1.0);
  std::sort(v.begin(), v.end());
  for (double g : v) {
    std::size_t hits = 0;
    for (const auto& r : m.rows) hits += r.tau.back() >= g;
    if (hits <= Gamma0 * m.replicates()) return g;
  }
  return 1.0;
}

}  // namespace

TEST(TuneFinalGamma, OrderStatisticWithoutInterimRules) {
  for (double G : {0.025, 0.1, 0.37}) {
    const SummaryMatrix m = synth::random_matrix(1000, {1.0, 2.0}, 20, -0.2, 11);
    const ThresholdSet th = final_only(2);
    const TuneResult r = tune_final_gamma(m, th, StoppingPolicy::standard(2, th), G);
    EXPECT_DOUBLE_EQ(r.thresholds.gamma.back(), smallest_feasible(m, G));
    EXPECT_LE(r.achieved_rate, G);
    // distinct continuous values: the count equals floor(G R)
    std::vector<double> v;
    for (const auto& row : m.rows) v.push_back(row.tau.back());
    std::sort(v.begin(), v.end());
    const std::size_t k = 1000 - static_cast<std::size_t>(G * 1000);
    EXPECT_DOUBLE_EQ(r.thresholds.gamma.back(), v[k]);
    EXPECT_FALSE(r.audit.empty());
  }
}

TEST(TuneFinalGamma, GammaZeroBoundOneIsMinimum) {
  const SummaryMatrix m = synth::random_matrix(300, {1.0}, 20, 0.0, 12);
  const ThresholdSet th = final_only(1);
  const TuneResult r = tune_final_gamma(m, th, StoppingPolicy::standard(1, th), 1.0);
  double mn = 1.0;
  for (const auto& row : m.rows) mn = std::min(mn, row.tau[0]);
  EXPECT_DOUBLE_EQ(r.thresholds.gamma[0], mn);
  EXPECT_DOUBLE_EQ(r.achieved_rate, 1.0);
}

TEST(TuneFinalGamma, NullBelowHalf) {
  SummaryMatrix m = synth::random_matrix(1000, {1.0}, 20, -3.0, 13);
  for (auto& row : m.rows) row.tau[0] = std::min(row.tau[0], 0.49);
  const ThresholdSet th = final_only(1);
  const TuneResult r = tune_final_gamma(m, th, StoppingPolicy::standard(1, th), 0.025);
  EXPECT_LE(r.thresholds.gamma[0], 0.5);
  EXPECT_LE(r.achieved_rate, 0.025);
}

TEST(TuneFinalGamma, InfeasibleNamesStage) {
  const SummaryMatrix m = synth::random_matrix(500, {1.0, 2.0, 3.0}, 20, 0.0, 14);
  ThresholdSet th;
  th.gamma = {0.05, 0.99, 0.99};
  try {
    tune_final_gamma(m, th, StoppingPolicy::standard(3, th), 0.1);
    FAIL() << "expected InfeasibleError";
  } catch (const InfeasibleError& e) {
    EXPECT_EQ(e.stage(), 1);
  }
}

TEST(TuneProportional, KappaOneWhenInitialFeasible) {
  const SummaryMatrix m = synth::random_matrix(1000, {1.0, 2.0}, 20, -1.0, 15);
  ThresholdSet th;
  th.gamma = {0.9999, 0.9999};
  const TuneResult r = tune_proportional(m, th, StoppingPolicy::standard(2, th), 0.5);
  EXPECT_DOUBLE_EQ(r.kappa, 1.0);
  EXPECT_EQ(r.thresholds.gamma, th.gamma);
}

TEST(TuneProportional, ZeroBoundGivesAllOnes) {
  const SummaryMatrix m = synth::random_matrix(200, {1.0, 2.0}, 20, 0.0, 16);
  ThresholdSet th;
  th.gamma = {0.9, 0.8};
  const TuneResult r = tune_proportional(m, th, StoppingPolicy::standard(2, th), 0.0);
  for (double g : r.thresholds.gamma) EXPECT_DOUBLE_EQ(g, 1.0);
}

TEST(TuneProportional, LargestFeasibleKappa) {
  const SummaryMatrix m = synth::random_matrix(2000, {1.0, 2.0, 3.0}, 20, 0.2, 17, true);
  ThresholdSet th;
  th.gamma = {0.5, 0.4, 0.3};
  th.rho = std::vector<double>{0.1, 0.2};
  const auto pol = StoppingPolicy::standard(3, th);
  const double G = 0.1;
  const TuneResult r = tune_proportional(m, th, pol, G);
  EXPECT_LE(r.achieved_rate, G);
  EXPECT_GT(r.kappa, 0.0);
  EXPECT_LT(r.kappa, 1.0);
  for (std::size_t t = 0; t < 3; ++t) EXPECT_NEAR(r.thresholds.gamma[t], 1 - r.kappa * (1 - th.gamma[t]), 1e-15);
  // a slightly larger kappa breaks the bound
  ThresholdSet looser = th;
  for (std::size_t t = 0; t < 3; ++t) looser.gamma[t] = 1 - (r.kappa + 2e-6) * (1 - th.gamma[t]);
  EXPECT_GT(nu_rate(m, looser, pol), G);
  // closure: the tuned thresholds reproduce the reported rate
  EXPECT_DOUBLE_EQ(nu_rate(m, r.thresholds, pol), r.achieved_rate);
}
