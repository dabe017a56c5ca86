#include "seqdesign/models/beta_math.hpp"

#include <cmath>

#include "seqdesign/error.hpp"

namespace seqdesign {

double log_gamma(double x) {
  int sign = 0;
  return ::lgamma_r(x, &sign);
}

double log_beta(double a, double b) { return log_gamma(a) + log_gamma(b) - log_gamma(a + b); }

namespace {

// Continued fraction for the incomplete beta function (modified Lentz).
double betacf(double a, double b, double x) {
  constexpr double tiny = 1e-300;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m < 1000; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-15) break;
  }
  return h;
}

// log I_x(a, b) using the continued fraction directly; accurate when x < (a+1)/(a+b+2).
double log_ibeta_cf(double x, double a, double b, double lbeta) {
  return a * std::log(x) + b * std::log1p(-x) - lbeta - std::log(a) + std::log(betacf(a, b, x));
}

}  // namespace

double log_beta_upper_tail(double x, double a, double b, double lbeta) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return -INFINITY;
  const double y = 1.0 - x;
  if (x * (a + b + 2.0) > a + 1.0) {
    // 1 - I_x(a,b) = I_{1-x}(b,a), continued fraction in the converging regime.
    return log_ibeta_cf(y, b, a, lbeta);
  }
  return std::log1p(-std::exp(log_ibeta_cf(x, a, b, lbeta)));
}

double beta_upper_quantile(double a, double b, double upper, double lbeta, double guess) {
  if (!(a > 0.0 && b > 0.0)) throw NumericError("beta quantile: shapes must be positive");
  if (!(upper > 0.0 && upper < 1.0)) throw ContractViolation("beta quantile: tail probability outside (0,1)");
  const double target = std::log(upper);
  double u;
  if (guess > 0.0 && guess < 1.0) {
    u = std::log(guess) - std::log1p(-guess);
  } else {
    const double m = a / (a + b);
    u = std::log(m) - std::log1p(-m);
  }
  // Halley iteration on log Q as a function of logit(x); a step below 1e-6 leaves an
  // error far under double precision given the cubic convergence.
  for (int it = 0; it < 200; ++it) {
    const double x = 1.0 / (1.0 + std::exp(-u));
    const double lq = log_beta_upper_tail(x, a, b, lbeta);
    const double lpdf = (a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) - lbeta;
    // d log Q / d logit(x) = -pdf * x (1 - x) / Q
    const double slope = -std::exp(lpdf + std::log(x) + std::log1p(-x) - lq);
    const double g = lq - target;
    const double curv = a * (1.0 - x) - b * x - slope;
    double step = g / (slope - 0.5 * g * curv);
    if (!std::isfinite(step) || step * g / slope < 0.0) step = g / slope;
    if (!std::isfinite(step)) step = lq > target ? 1.0 : -1.0;
    if (step > 2.0) step = 2.0;
    if (step < -2.0) step = -2.0;
    u -= step;
    if (std::fabs(step) < 1e-6) break;
  }
  return 1.0 / (1.0 + std::exp(-u));
}

double beta_quantile(double a, double b, double q) {
  return beta_upper_quantile(a, b, 1.0 - q, log_beta(a, b), -1.0);
}

}  // namespace seqdesign
