#include <cmath>

#include <gtest/gtest.h>

#include "seqdesign/engine.hpp"
#include "seqdesign/error.hpp"
#include "seqdesign/models/normal.hpp"
#include "seqdesign/numeric.hpp"

using namespace seqdesign;

namespace {

RunPlan normal_plan(std::size_t R, std::vector<double> c, bool pred) {
  RunPlan p;
  p.model = normal_model(1.0, 0.0, kInf);
  p.scenario.label = ScenarioLabel::alternative;
  p.scenario.sampler = DeltaSampler::fixed(0.2);
  p.hyp = Hypothesis(0.0, kInf);
  p.schedule = AnalysisSchedule(std::move(c), 40);
  p.replicates = R;
  p.inner_replicates = 200;
  p.compute_tau_P = pred;
  p.gamma_T_for_pred = 0.975;
  p.base_seed = 99;
  return p;
}

class FailingModel final : public Model {
 public:
  std::string name() const override { return "failing"; }
  std::size_t theta_dim() const override { return 1; }
  DeltaTransform delta_transform() const override { return DeltaTransform::identity; }
  std::vector<double> theta_for_delta(double d) const override { return {d}; }
  double delta_of_theta(const std::vector<double>& t) const override { return t[0]; }
  void generate(const std::vector<double>& theta, const StreamKey& key, std::size_t first, std::size_t count,
                DataBlock& out) const override {
    if (key.replicate == 5 || key.replicate == 9) throw NumericError("synthetic failure");
    base_.generate(theta, key, first, count, out);
  }
  PosteriorFit fit(const DataView& d, const MCMCSettings& s, const StreamKey& k) const override {
    return base_.fit(d, s, k);
  }
  double sigma_sq(const std::vector<double>& t) const override { return base_.sigma_sq(t); }
  std::vector<double> draw_theta(const PosteriorFit& f, RngStream& r) const override { return base_.draw_theta(f, r); }
  std::string describe() const override { return "failing"; }

 private:
  NormalModel base_{{1.0, 0.0, kInf, true, 10000000}};
};

}  // namespace

TEST(Engine, WorkerCountDoesNotChangeOutput) {
  const RunPlan p = normal_plan(60, {1.0, 2.0}, true);
  const SummaryMatrix a = simulate_summary_matrix(p, 1);
  const SummaryMatrix b = simulate_summary_matrix(p, 4);
  ASSERT_EQ(a.replicates(), b.replicates());
  for (std::size_t r = 0; r < a.replicates(); ++r) {
    EXPECT_EQ(a.rows[r].tau, b.rows[r].tau);
    EXPECT_EQ(a.rows[r].tau_P, b.rows[r].tau_P);
  }
  EXPECT_EQ(a.inner, b.inner);
  EXPECT_EQ(a.pred_draws, 200u);
  EXPECT_EQ(a.tau_draws, 10000000u);
}

TEST(Engine, SingleStageHasNoPredictive) {
  RunPlan p = normal_plan(20, {1.0}, true);
  EXPECT_THROW(p.validate(), ConfigError);
  p.compute_tau_P = false;
  const SummaryMatrix m = simulate_summary_matrix(p, 1);
  EXPECT_FALSE(m.has_tau_P());
  EXPECT_EQ(m.rows[0].tau.size(), 1u);
}

TEST(Engine, ConditionalTauMatchesClosedForm) {
  const RunPlan p = normal_plan(5, {1.0, 2.0}, false);
  const SummaryRow row = simulate_replicate(p, 3);
  EXPECT_EQ(row.delta, 0.2);
  for (double v : row.tau) {
    EXPECT_GT(v, 0.0);
    EXPECT_LT(v, 1.0);
  }
  const SummaryMatrix m = simulate_summary_matrix(p, 1);
  EXPECT_EQ(m.rows[3].tau, row.tau);
}

TEST(Engine, FailureNamesReplicate) {
  RunPlan p = normal_plan(20, {1.0, 2.0}, false);
  p.model = std::make_shared<FailingModel>();
  try {
    simulate_summary_matrix(p, 1);
    FAIL() << "expected ReplicateError";
  } catch (const ReplicateError& e) {
    EXPECT_EQ(e.replicate(), 5u);
  }
}

TEST(Engine, PlanValidation) {
  RunPlan p = normal_plan(0, {1.0, 2.0}, false);
  EXPECT_THROW(p.validate(), ConfigError);
  p = normal_plan(10, {1.0, 2.0}, false);
  p.model.reset();
  EXPECT_THROW(p.validate(), ConfigError);
}

TEST(Spearman, RankOracle) {
  EXPECT_DOUBLE_EQ(spearman({1, 2, 3, 4}, {10, 20, 30, 40}), 1.0);
  EXPECT_DOUBLE_EQ(spearman({1, 2, 3, 4}, {4, 3, 2, 1}), -1.0);
  // ranks x: 1 2 3 4 5, y: 2 1 4 3 5 -> rho = 1 - 6*4/(5*24) = 0.8
  EXPECT_NEAR(spearman({1, 2, 3, 4, 5}, {2, 1, 4, 3, 5}), 0.8, 1e-12);
  EXPECT_TRUE(std::isnan(spearman({1, 1, 1}, {1, 2, 3})));
}

TEST(Engine, SuccessiveStagesArePositivelyCoupled) {
  const RunPlan p = normal_plan(300, {1.0, 2.0, 3.0}, false);
  const CouplingReport c = monotone_coupling_check(simulate_summary_matrix(p, 1));
  ASSERT_EQ(c.rank_correlation.size(), 2u);
  for (double r : c.rank_correlation) EXPECT_GT(r, 0.5);
  EXPECT_TRUE(std::isnan(c.agreement[0]));
}
