#pragma once

#include "seqdesign/models/model.hpp"

namespace seqdesign {

struct BetaQuantileParams {
  double q = 0.99;
  // Shape alpha held fixed when a scenario maps delta to theta; beta is solved from delta.
  double scenario_alpha = 3.0;
  // Flat prior over a box on (log alpha, log beta).
  double log_alpha_min = -3.0;
  double log_alpha_max = 5.5;
  double log_beta_min = -3.0;
  double log_beta_max = 11.5;
};

// y_i ~ Beta(alpha, beta); theta = (alpha, beta); delta = F^{-1}(q; alpha, beta).
class BetaQuantileModel final : public Model {
 public:
  explicit BetaQuantileModel(BetaQuantileParams p);

  std::string name() const override { return "beta_quantile"; }
  std::size_t theta_dim() const override { return 2; }
  DeltaTransform delta_transform() const override { return DeltaTransform::logit; }
  std::vector<double> theta_for_delta(double delta) const override;
  double delta_of_theta(const std::vector<double>& theta) const override;
  void generate(const std::vector<double>& theta, const StreamKey& key, std::size_t first,
                std::size_t count, DataBlock& out) const override;
  PosteriorFit fit(const DataView& data, const MCMCSettings& mcmc, const StreamKey& key) const override;
  double sigma_sq(const std::vector<double>& theta) const override;
  std::vector<double> draw_theta(const PosteriorFit& fit, RngStream& rng) const override;
  std::string describe() const override;

  const BetaQuantileParams& params() const noexcept { return p_; }
  // Maximum likelihood estimate of (alpha, beta) by Fisher scoring.
  // Returns {1, 1} for samples too small or degenerate to estimate.
  std::vector<double> mle(const DataView& data) const;

 private:
  BetaQuantileParams p_;
};

ModelPtr beta_quantile_model(BetaQuantileParams p);

}  // namespace seqdesign
