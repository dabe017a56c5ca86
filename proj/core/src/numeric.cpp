#include "seqdesign/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/special_functions/erf.hpp>

#include "seqdesign/error.hpp"

namespace seqdesign {

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;
}  // namespace

double normal_cdf(double x) {
  if (std::isnan(x)) return x;
  if (x == kInf) return 1.0;
  if (x == -kInf) return 0.0;
  return 0.5 * std::erfc(-x * kInvSqrt2);
}

double normal_sf(double x) { return normal_cdf(-x); }

double normal_pdf(double x) {
  if (std::isinf(x)) return 0.0;
  return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

double log_normal_cdf(double x) {
  if (x == kInf) return 0.0;
  if (x == -kInf) return -kInf;
  if (x > -35.0) {
    if (x > 5.0) return std::log1p(-0.5 * std::erfc(x * kInvSqrt2));
    return std::log(normal_cdf(x));
  }
  // Mills ratio expansion: Phi(x) ~ phi(x)/|x| * (1 - 1/x^2 + 3/x^4 - 15/x^6)
  const double x2 = x * x;
  const double series = 1.0 - 1.0 / x2 + 3.0 / (x2 * x2) - 15.0 / (x2 * x2 * x2);
  return -0.5 * x2 - std::log(-x) - 0.91893853320467274178 + std::log(series);
}

double normal_quantile(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw ContractViolation("normal_quantile: p outside [0,1]");
  if (p == 0.0) return -kInf;
  if (p == 1.0) return kInf;
  return -1.41421356237309504880 * boost::math::erfc_inv(2.0 * p);
}

double logit(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw ContractViolation("logit: argument must lie strictly inside (0,1), got " + std::to_string(p));
  if (p < 0.5) return std::log(p) - std::log1p(-p);
  return std::log(p / (1.0 - p));
}

double expit(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double clamp_prob(double p, std::size_t draws) {
  if (draws == 0) throw ContractViolation("clamp_prob: draws must be positive");
  const double lo = 1.0 / (2.0 * static_cast<double>(draws));
  return std::min(std::max(p, lo), 1.0 - lo);
}

long ceil_tolerant(double v) {
  const double r = std::round(v);
  if (std::fabs(v - r) <= 1e-9 * std::max(1.0, std::fabs(v))) return static_cast<long>(r);
  return static_cast<long>(std::ceil(v));
}

}  // namespace seqdesign
