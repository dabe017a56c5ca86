#pragma once

#include <cstddef>
#include <vector>

#include "seqdesign/hypothesis.hpp"
#include "seqdesign/models/model.hpp"
#include "seqdesign/schedule.hpp"

namespace seqdesign {

struct PredictiveResult {
  double prob = 0.0;              // clamped at resolution M
  std::vector<double> inner;      // final-analysis posterior probability per inner replicate
};

// Posterior predictive probability that the final-analysis posterior probability
// reaches gamma_T. For each m: theta^(m) from the current posterior fit, n_T - n_t new
// observations, a fresh posterior fit on the pooled data. t is the 0-based stage and
// data_t must hold exactly n_t observations. Inner replicate m uses
// key.with_lane(predictive_fit / predictive_data).with_sub(m).
PredictiveResult predictive_prob(const Model& model, const DataView& data_t, const PosteriorFit& current,
                                 const AnalysisSchedule& schedule, std::size_t t, const Hypothesis& hyp,
                                 double gamma_T, std::size_t M, const MCMCSettings& inner_mcmc,
                                 const StreamKey& key, Bandwidth rule = Bandwidth::silverman);

// Index used on the predictive_fit lane for the theta draw (chains use 0..chains-1).
inline constexpr std::uint32_t kThetaDrawIndex = 0x80000000u;

}  // namespace seqdesign
