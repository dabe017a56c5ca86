#include <gtest/gtest.h>

#include "seqdesign/design/stopping.hpp"
#include "seqdesign/error.hpp"
#include "synthetic.hpp"

using namespace seqdesign;

namespace {

ThresholdSet two_stage(double g1, double g2, double rho) {
  ThresholdSet th;
  th.gamma = {g1, g2};
  th.rho = std::vector<double>{rho};
  return th;
}

SummaryRow row2(double t1, double t2, double p1) { return SummaryRow{{}, 0.0, {t1, t2}, {p1}}; }

}  // namespace

TEST(EvaluateStop, TwoAnalysisExamples) {
  const ThresholdSet th = two_stage(0.99, 0.97, 0.1);
  const StoppingPolicy pol = StoppingPolicy::standard(2, th);
  StopResult r = evaluate_stop(row2(0.95, 0.995, 0.5), th, pol);
  EXPECT_TRUE(r.nu);
  EXPECT_EQ(r.stop_stage, 2u);
  EXPECT_EQ(r.stopped_for, StopReason::success);
  r = evaluate_stop(row2(0.995, 0.01, 0.01), th, pol);
  EXPECT_TRUE(r.nu);
  EXPECT_EQ(r.stop_stage, 1u);
  r = evaluate_stop(row2(0.5, 0.999, 0.05), th, pol);
  EXPECT_FALSE(r.nu);
  EXPECT_EQ(r.stop_stage, 1u);
  EXPECT_EQ(r.stopped_for, StopReason::failure);
  r = evaluate_stop(row2(0.5, 0.9, 0.5), th, pol);
  EXPECT_FALSE(r.nu);
  EXPECT_EQ(r.stop_stage, 2u);
  EXPECT_EQ(r.stopped_for, StopReason::none);
}

// All 3^4 orderings of (tau_1 vs gamma_1, tau_P1 vs rho_1, tau_2 vs gamma_2, gamma_1 vs gamma_2).
TEST(EvaluateStop, ExhaustiveTruthTable) {
  const double offs[3] = {-0.01, 0.0, 0.01};
  int cases = 0;
  for (double o1 : offs)
    for (double op : offs)
      for (double o2 : offs)
        for (double og : offs) {
          const double g1 = 0.9, g2 = 0.9 + og, rho = 0.2;
          const ThresholdSet th = two_stage(g1, g2, rho);
          const SummaryRow row = row2(g1 + o1, g2 + o2, rho + op);
          const bool s1 = row.tau[0] >= g1;
          const bool f1 = !s1 && row.tau_P[0] < rho;
          const bool nu = s1 || (!s1 && row.tau_P[0] >= rho && row.tau[1] >= g2);
          const StopResult r = evaluate_stop(row, th, StoppingPolicy::standard(2, th));
          EXPECT_EQ(r.nu, nu);
          EXPECT_EQ(r.stop_stage, (s1 || f1) ? 1u : 2u);
          EXPECT_EQ(r.stopped_for, nu ? StopReason::success : (f1 ? StopReason::failure : StopReason::none));
          ++cases;
        }
  EXPECT_EQ(cases, 81);
}

TEST(EvaluateStop, FailureFirstOrdering) {
  const ThresholdSet th = two_stage(0.9, 0.9, 0.5);
  const SummaryRow row = row2(0.95, 0.1, 0.2);  // both rules fire at stage 1
  EXPECT_EQ(evaluate_stop(row, th, StoppingPolicy::standard(2, th, true)).stopped_for, StopReason::success);
  EXPECT_EQ(evaluate_stop(row, th, StoppingPolicy::standard(2, th, false)).stopped_for, StopReason::failure);
}

TEST(EvaluateStop, MissingPredictiveSummary) {
  const ThresholdSet th = two_stage(0.99, 0.97, 0.1);
  SummaryRow row{{}, 0.0, {0.5, 0.5}, {}};
  EXPECT_THROW(evaluate_stop(row, th, StoppingPolicy::standard(2, th)), MissingSummaryError);
}

TEST(EvaluateStop, IgnoresValuesAfterStop) {
  const ThresholdSet th = two_stage(0.99, 0.97, 0.1);
  const auto pol = StoppingPolicy::standard(2, th);
  SummaryRow row = row2(0.995, 0.2, 0.3);
  const StopResult a = evaluate_stop(row, th, pol);
  row.tau[1] = 0.9999;
  row.tau_P[0] = 0.0001;
  const StopResult b = evaluate_stop(row, th, pol);
  EXPECT_EQ(a.nu, b.nu);
  EXPECT_EQ(a.stop_stage, b.stop_stage);
}

TEST(Policy, FinalStageOnlyChecksGamma) {
  ThresholdSet th;
  th.gamma = {0.99, 0.98, 0.97};
  th.xi = std::vector<double>{0.1, 0.1, 0.1};
  th.rho = std::vector<double>{0.1, 0.2};
  const auto pol = StoppingPolicy::standard(3, th);
  ASSERT_EQ(pol.stages.size(), 3u);
  ASSERT_EQ(pol.stages[2].size(), 1u);
  EXPECT_EQ(pol.stages[2][0].slot, ThresholdSlot::gamma);
  EXPECT_TRUE(pol.stages[0][0].is_success());
  EXPECT_TRUE(pol.uses_tau_P());
}

TEST(OperatingCharacteristics, CountsAndExpectedSize) {
  SummaryMatrix m;
  m.schedule = AnalysisSchedule({1.0, 2.0}, 10);
  m.rows = {row2(0.995, 0.5, 0.5), row2(0.5, 0.99, 0.5), row2(0.5, 0.5, 0.01), row2(0.995, 0.99, 0.5)};
  const ThresholdSet th = two_stage(0.99, 0.97, 0.1);
  const OCReport oc = operating_characteristics(m, th, StoppingPolicy::standard(2, th));
  EXPECT_DOUBLE_EQ(oc.nu_rate, 0.75);
  EXPECT_DOUBLE_EQ(oc.cum_success[0], 0.5);
  EXPECT_DOUBLE_EQ(oc.cum_failure[0], 0.25);
  EXPECT_DOUBLE_EQ(oc.cum_failure[1], 0.25);
  EXPECT_DOUBLE_EQ(oc.expected_n, (10 + 20 + 10 + 10) / 4.0);
  EXPECT_NEAR(oc.se_success[1], std::sqrt(0.75 * 0.25 / 4), 1e-15);
}

TEST(OperatingCharacteristics, ZeroThresholdsAlwaysStop) {
  const SummaryMatrix m = synth::random_matrix(200, {1.0, 2.0, 3.0}, 30, 0.0, 3);
  ThresholdSet th;
  th.gamma = {0.0, 0.0, 0.0};
  const OCReport oc = operating_characteristics(m, th, StoppingPolicy::standard(3, th));
  EXPECT_DOUBLE_EQ(oc.cum_success[0], 1.0);
  EXPECT_DOUBLE_EQ(oc.expected_n, 30.0);
}

TEST(OperatingCharacteristics, MonotoneProperties) {
  const SummaryMatrix m = synth::random_matrix(2000, {1.0, 2.0, 3.0}, 30, 0.3, 5, true);
  double prev_rate = 2.0;
  for (double g : {0.5, 0.7, 0.9, 0.95, 0.99}) {
    ThresholdSet th;
    th.gamma = {g, g, g};
    th.rho = std::vector<double>{0.05, 0.05};
    const OCReport oc = operating_characteristics(m, th, StoppingPolicy::standard(3, th));
    for (std::size_t t = 1; t < 3; ++t) {
      EXPECT_GE(oc.cum_success[t], oc.cum_success[t - 1]);
      EXPECT_GE(oc.cum_failure[t], oc.cum_failure[t - 1]);
    }
    EXPECT_DOUBLE_EQ(oc.nu_rate, oc.cum_success.back());
    EXPECT_LE(oc.nu_rate, prev_rate);
    prev_rate = oc.nu_rate;
  }
  prev_rate = 2.0;
  for (double rho : {0.0, 0.1, 0.3, 0.6}) {
    ThresholdSet th;
    th.gamma = {0.9, 0.9, 0.9};
    th.rho = std::vector<double>{rho, rho};
    const double rate = nu_rate(m, th, StoppingPolicy::standard(3, th));
    EXPECT_LE(rate, prev_rate);
    prev_rate = rate;
  }
}
