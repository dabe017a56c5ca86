#pragma once

#include <cstddef>
#include <limits>

namespace seqdesign {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Standard normal helpers. Infinite arguments map to exact 0/1.
double normal_cdf(double x);
double normal_sf(double x);
double normal_pdf(double x);
double log_normal_cdf(double x);
double normal_quantile(double p);

// logit(p) = log(p) - log(1 - p). Throws ContractViolation unless 0 < p < 1.
double logit(double p);
double expit(double x);

// Clamp into [1/(2 draws), 1 - 1/(2 draws)].
double clamp_prob(double p, std::size_t draws);

// ceil(v) that treats values within a relative 1e-9 of an integer as that integer,
// so products such as 1.1 * 10 do not round up to 12.
long ceil_tolerant(double v);

}  // namespace seqdesign
