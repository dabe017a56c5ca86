#include "seqdesign/models/model.hpp"

#include "seqdesign/error.hpp"
#include "seqdesign/numeric.hpp"

namespace seqdesign {

double Model::posterior_prob(const PosteriorFit& fit, const Hypothesis& hyp, Bandwidth rule) const {
  if (fit.closed_form) {
    const double lo = (hyp.lower() - fit.mean) / fit.sd;
    const double hi = (hyp.upper() - fit.mean) / fit.sd;
    const double p = lo > 0.0 ? normal_sf(lo) - normal_sf(hi) : normal_cdf(hi) - normal_cdf(lo);
    return clamp_prob(p, fit.resolution);
  }
  return posterior_prob_H1(fit.delta, hyp, rule, delta_transform());
}

std::size_t pick_draw(const PosteriorFit& fit, RngStream& rng) {
  const std::size_t count = fit.dim ? fit.states.size() / fit.dim : 0;
  if (count == 0) throw ContractViolation("posterior fit holds no retained states");
  return static_cast<std::size_t>(rng.below(count));
}

}  // namespace seqdesign
