#include "seqdesign/models/kde.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "seqdesign/error.hpp"
#include "seqdesign/numeric.hpp"

namespace seqdesign {

namespace {

// Type-7 sample quantile on a scratch copy (partially reordered).
double quantile7(std::vector<double>& v, double p) {
  const double h = (static_cast<double>(v.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  std::nth_element(v.begin(), v.begin() + static_cast<long>(lo), v.end());
  const double a = v[lo];
  if (lo + 1 >= v.size()) return a;
  const double b = *std::min_element(v.begin() + static_cast<long>(lo) + 1, v.end());
  return a + (h - static_cast<double>(lo)) * (b - a);
}

}  // namespace

double bandwidth(const std::vector<double>& x, Bandwidth rule) {
  const std::size_t n = x.size();
  if (n < 2) return 0.0;
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  const double factor = std::pow(static_cast<double>(n), -0.2);
  if (rule == Bandwidth::scott) return 1.06 * sd * factor;
  std::vector<double> scratch(x);
  const double q1 = quantile7(scratch, 0.25);
  const double q3 = quantile7(scratch, 0.75);
  double spread = std::min(sd, (q3 - q1) / 1.34);
  if (!(spread > 0.0)) spread = sd;
  return 0.9 * spread * factor;
}

double kde_interval_mass(const std::vector<double>& x, double lo, double hi, Bandwidth rule) {
  if (x.empty()) throw InsufficientSampleError("kernel density estimate needs draws");
  const double h = bandwidth(x, rule);
  double acc = 0.0;
  if (!(h > 0.0)) {
    for (double v : x) acc += (v > lo && v < hi) ? 1.0 : 0.0;
    return acc / static_cast<double>(x.size());
  }
  const double inv = 1.0 / h;
  const bool lower_inf = std::isinf(lo);
  const bool upper_inf = std::isinf(hi);
  for (double v : x) {
    const double up = upper_inf ? 1.0 : normal_cdf((hi - v) * inv);
    const double dn = lower_inf ? 0.0 : normal_cdf((lo - v) * inv);
    acc += up - dn;
  }
  return acc / static_cast<double>(x.size());
}

double apply_transform(DeltaTransform t, double v) {
  switch (t) {
    case DeltaTransform::identity: return v;
    case DeltaTransform::logit:
      if (v <= 0.0) return -kInf;
      if (v >= 1.0) return kInf;
      return std::log(v) - std::log1p(-v);
    case DeltaTransform::log:
      if (v <= 0.0) return -kInf;
      return std::log(v);
  }
  return v;
}

double posterior_prob_H1(const std::vector<double>& delta_draws, const Hypothesis& hyp,
                         Bandwidth rule, DeltaTransform transform) {
  if (delta_draws.size() < kMinPosteriorDraws)
    throw InsufficientSampleError("posterior_prob_H1 needs at least " +
                                  std::to_string(kMinPosteriorDraws) + " draws, got " +
                                  std::to_string(delta_draws.size()));
  double p;
  if (transform == DeltaTransform::identity) {
    p = kde_interval_mass(delta_draws, hyp.lower(), hyp.upper(), rule);
  } else {
    std::vector<double> z(delta_draws.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
      z[i] = apply_transform(transform, delta_draws[i]);
      if (!std::isfinite(z[i])) throw NumericError("posterior draw outside the domain of the delta transform");
    }
    p = kde_interval_mass(z, apply_transform(transform, hyp.lower()),
                          apply_transform(transform, hyp.upper()), rule);
  }
  return clamp_prob(p, delta_draws.size());
}

}  // namespace seqdesign
