#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "seqdesign/hypothesis.hpp"
#include "seqdesign/models/data.hpp"
#include "seqdesign/models/kde.hpp"
#include "seqdesign/models/mcmc.hpp"
#include "seqdesign/rng.hpp"

namespace seqdesign {

// Posterior approximation returned by Model::fit. Either a closed-form normal
// posterior for delta or a set of retained draws.
struct PosteriorFit {
  bool closed_form = false;
  double mean = 0.0;
  double sd = 0.0;
  std::size_t resolution = 0;   // clamp resolution for posterior probabilities
  std::vector<double> delta;    // retained delta draws
  std::vector<double> states;   // retained sampler states, row-major
  std::size_t dim = 0;
  double acceptance = 0.0;
  double rhat = 0.0;
  bool degenerate = false;      // e.g. no events observed
};

class Model {
 public:
  virtual ~Model() = default;

  virtual std::string name() const = 0;
  virtual std::size_t theta_dim() const = 0;
  virtual DeltaTransform delta_transform() const = 0;

  // Full parameter vector for a requested target value (nuisance parameters fixed by the model).
  virtual std::vector<double> theta_for_delta(double delta) const = 0;
  virtual double delta_of_theta(const std::vector<double>& theta) const = 0;

  // Appends observations first .. first+count-1 to out. Observation i draws only from
  // the substream key.with_index(i), so generation is additive across stages.
  virtual void generate(const std::vector<double>& theta, const StreamKey& key, std::size_t first,
                        std::size_t count, DataBlock& out) const = 0;

  virtual PosteriorFit fit(const DataView& data, const MCMCSettings& mcmc, const StreamKey& key) const = 0;

  // Asymptotic variance of the delta estimator per observation.
  virtual double sigma_sq(const std::vector<double>& theta) const = 0;

  // Natural-scale parameter draw from a posterior fit.
  virtual std::vector<double> draw_theta(const PosteriorFit& fit, RngStream& rng) const = 0;

  virtual std::string describe() const = 0;

  // Default: kernel density estimate of the retained delta draws.
  virtual double posterior_prob(const PosteriorFit& fit, const Hypothesis& hyp,
                                Bandwidth rule = Bandwidth::silverman) const;
};

using ModelPtr = std::shared_ptr<const Model>;

// Picks one retained state uniformly at random.
std::size_t pick_draw(const PosteriorFit& fit, RngStream& rng);

}  // namespace seqdesign
