#pragma once

#include "seqdesign/models/model.hpp"

namespace seqdesign {

struct SurvivalParams {
  double control_rate = 0.05;
  double admin_censor_time = 28.0;
  double dropout_prob = 0.0;
  double prior_mean = 0.0;  // normal prior on each log-rate
  double prior_sd = 10.0;
};

// Two-arm exponential event times with alternating 1:1 allocation (even index = control).
// theta = (control_rate, treatment_rate); delta = treatment_rate / control_rate.
// Administrative censoring at a fixed time; a dropout_prob fraction of subjects also
// receive a Uniform(0, admin_censor_time) dropout time.
class SurvivalModel final : public Model {
 public:
  explicit SurvivalModel(SurvivalParams p);

  std::string name() const override { return "survival"; }
  std::size_t theta_dim() const override { return 2; }
  DeltaTransform delta_transform() const override { return DeltaTransform::log; }
  std::vector<double> theta_for_delta(double delta) const override;
  double delta_of_theta(const std::vector<double>& theta) const override;
  void generate(const std::vector<double>& theta, const StreamKey& key, std::size_t first,
                std::size_t count, DataBlock& out) const override;
  PosteriorFit fit(const DataView& data, const MCMCSettings& mcmc, const StreamKey& key) const override;
  double sigma_sq(const std::vector<double>& theta) const override;
  std::vector<double> draw_theta(const PosteriorFit& fit, RngStream& rng) const override;
  std::string describe() const override;

  const SurvivalParams& params() const noexcept { return p_; }
  // Probability that a subject with this event rate has an observed event.
  double event_probability(double rate) const;
  double admin_censor_fraction(double rate) const;
  double dropout_fraction(double rate) const;

 private:
  SurvivalParams p_;
};

struct SurvivalCalibration {
  double control_rate;
  double dropout_prob;
};

// Solves for the control event rate and dropout probability that give the requested
// administrative-censoring and dropout fractions in the control arm.
SurvivalCalibration calibrate_survival(double admin_censor_time, double admin_fraction,
                                       double dropout_fraction);

ModelPtr survival_model(double control_rate, double admin_censor_time, double dropout_prob);

}  // namespace seqdesign
