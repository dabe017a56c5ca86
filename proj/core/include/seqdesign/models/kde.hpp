#pragma once

#include <cstddef>
#include <vector>

#include "seqdesign/hypothesis.hpp"

namespace seqdesign {

enum class Bandwidth { silverman, scott };
enum class DeltaTransform { identity, logit, log };

inline constexpr std::size_t kMinPosteriorDraws = 100;

double bandwidth(const std::vector<double>& x, Bandwidth rule);

// Mass inside (lo, hi) of a Gaussian kernel density estimate fitted to x.
// Falls back to the empirical fraction when the bandwidth is zero.
double kde_interval_mass(const std::vector<double>& x, double lo, double hi, Bandwidth rule);

// Posterior probability of H1 from delta draws: the kernel estimate is fitted on the
// transformed scale and the mass inside the transformed interval is clamped at the
// resolution of the draw count. Throws InsufficientSampleError below 100 draws.
double posterior_prob_H1(const std::vector<double>& delta_draws, const Hypothesis& hyp,
                         Bandwidth rule = Bandwidth::silverman,
                         DeltaTransform transform = DeltaTransform::identity);

double apply_transform(DeltaTransform t, double v);

}  // namespace seqdesign
