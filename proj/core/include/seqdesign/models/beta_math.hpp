#pragma once

namespace seqdesign {

// Thread-safe log Gamma and log Beta.
double log_gamma(double x);
double log_beta(double a, double b);

// log of the upper tail 1 - I_x(a, b).
double log_beta_upper_tail(double x, double a, double b, double lbeta);

// x with 1 - I_x(a, b) = upper, by safeguarded Halley iterations on logit(x)
// starting from guess (ignored when outside (0,1)). lbeta must equal log_beta(a, b).
double beta_upper_quantile(double a, double b, double upper, double lbeta, double guess);
double beta_quantile(double a, double b, double q);

}  // namespace seqdesign
