#include "seqdesign/models/predictive.hpp"

#include <string>

#include "seqdesign/error.hpp"
#include "seqdesign/numeric.hpp"

namespace seqdesign {

PredictiveResult predictive_prob(const Model& model, const DataView& data_t, const PosteriorFit& current,
                                 const AnalysisSchedule& schedule, std::size_t t, const Hypothesis& hyp,
                                 double gamma_T, std::size_t M, const MCMCSettings& inner_mcmc,
                                 const StreamKey& key, Bandwidth rule) {
  const std::size_t T = schedule.stages();
  if (t + 1 >= T)
    throw StageIndexError("predictive_prob: stage " + std::to_string(t + 1) + " is not an interim analysis of " +
                          std::to_string(T));
  if (M < 1) throw ContractViolation("predictive_prob: M must be >= 1");
  if (M > 65535) throw ContractViolation("predictive_prob: M must be <= 65535");
  const std::vector<long> sizes = schedule.sizes();
  const auto n_t = static_cast<std::size_t>(sizes[t]);
  const auto n_T = static_cast<std::size_t>(sizes[T - 1]);
  if (data_t.size() != n_t)
    throw ContractViolation("predictive_prob: data holds " + std::to_string(data_t.size()) +
                            " observations, stage needs " + std::to_string(n_t));

  PredictiveResult out;
  out.inner.resize(M);
  std::size_t hits = 0;
  DataBlock pooled = data_t.block().prefix(n_t);
  pooled.reserve(n_T);
  const auto stage = static_cast<std::uint8_t>(t);
  for (std::size_t m = 0; m < M; ++m) {
    const StreamKey fit_key = key.with_lane(Lane::predictive_fit).with_stage(stage).with_sub(static_cast<std::uint16_t>(m));
    RngStream draw_rng(fit_key.with_index(kThetaDrawIndex));
    const std::vector<double> theta = model.draw_theta(current, draw_rng);
    pooled.y.resize(n_t);
    if (!pooled.arm.empty()) pooled.arm.resize(n_t);
    if (!pooled.status.empty()) pooled.status.resize(n_t);
    const StreamKey data_key = key.with_lane(Lane::predictive_data).with_stage(stage).with_sub(static_cast<std::uint16_t>(m));
    model.generate(theta, data_key, n_t, n_T - n_t, pooled);
    const PosteriorFit fit = model.fit(DataView(pooled), inner_mcmc, fit_key);
    const double tau_T = model.posterior_prob(fit, hyp, rule);
    out.inner[m] = tau_T;
    hits += tau_T >= gamma_T;
  }
  out.prob = clamp_prob(static_cast<double>(hits) / static_cast<double>(M), M);
  return out;
}

}  // namespace seqdesign
