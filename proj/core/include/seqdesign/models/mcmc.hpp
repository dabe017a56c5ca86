#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "seqdesign/rng.hpp"

namespace seqdesign {

struct MCMCSettings {
  int burnin = 1000;
  int retained = 5000;
  int chains = 1;
  double target_acceptance = 0.3;
  bool adaptation = true;

  void validate() const;
};

using McmcState = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 4, 1>;
using McmcMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, 4, 4>;

// Unnormalised log density on an unconstrained space plus the map to delta.
class MetropolisTarget {
 public:
  virtual ~MetropolisTarget() = default;
  virtual double log_density(const McmcState& x) = 0;
  virtual double delta(const McmcState& x) = 0;
};

struct MetropolisOutput {
  std::vector<double> delta;   // retained draws, all chains concatenated
  std::vector<double> states;  // retained states, row-major (draw x dim)
  std::size_t dim = 0;
  double acceptance = 0.0;     // post burn-in acceptance rate
  double rhat = 0.0;           // potential scale reduction on delta, 0 when chains == 1
};

// Adaptive random-walk Metropolis. The proposal shape starts at proposal_cov and the
// scale is tuned in batches of 50 during burn-in; halfway through burn-in the shape is
// replaced by the empirical covariance of the chain so far. Chain c draws from key.with_index(c).
MetropolisOutput run_metropolis(MetropolisTarget& target, const McmcState& init,
                                const McmcMatrix& proposal_cov, const MCMCSettings& settings,
                                const StreamKey& key);

// Gelman-Rubin statistic over equally long chains stored back to back.
double potential_scale_reduction(const std::vector<double>& draws, std::size_t chains);

}  // namespace seqdesign
