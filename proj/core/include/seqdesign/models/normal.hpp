#pragma once

#include "seqdesign/models/model.hpp"
#include "seqdesign/numeric.hpp"

namespace seqdesign {

struct NormalModelParams {
  double sigma = 1.0;
  double prior_mean = 0.0;
  double prior_sd = kInf;  // infinity means a flat prior
  bool closed_form = true;
  // Clamp resolution of closed-form posterior probabilities.
  std::size_t closed_form_resolution = 10000000;
};

// y_i ~ Normal(delta, sigma^2) with known sigma; theta = (delta).
class NormalModel final : public Model {
 public:
  explicit NormalModel(NormalModelParams p);

  std::string name() const override { return "normal"; }
  std::size_t theta_dim() const override { return 1; }
  DeltaTransform delta_transform() const override { return DeltaTransform::identity; }
  std::vector<double> theta_for_delta(double delta) const override { return {delta}; }
  double delta_of_theta(const std::vector<double>& theta) const override { return theta.at(0); }
  void generate(const std::vector<double>& theta, const StreamKey& key, std::size_t first,
                std::size_t count, DataBlock& out) const override;
  PosteriorFit fit(const DataView& data, const MCMCSettings& mcmc, const StreamKey& key) const override;
  double sigma_sq(const std::vector<double>&) const override { return p_.sigma * p_.sigma; }
  std::vector<double> draw_theta(const PosteriorFit& fit, RngStream& rng) const override;
  std::string describe() const override;

  // Exact conjugate posterior (mean, sd) of delta.
  std::pair<double, double> exact_posterior(const DataView& data) const;
  const NormalModelParams& params() const noexcept { return p_; }
  // Same model but forcing the sampling path (or the closed form).
  NormalModel with_closed_form(bool on) const;

 private:
  NormalModelParams p_;
};

ModelPtr normal_model(double sigma, double prior_mean, double prior_sd);

}  // namespace seqdesign
