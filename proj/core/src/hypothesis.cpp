#include "seqdesign/hypothesis.hpp"

#include <cmath>
#include <cstdio>

#include "seqdesign/error.hpp"

namespace seqdesign {

Hypothesis::Hypothesis(double lower, double upper) : lower_(lower), upper_(upper) {
  if (std::isnan(lower) || std::isnan(upper)) throw ConfigError("hypothesis endpoints must not be NaN");
  if (!(lower < upper)) throw ConfigError("hypothesis requires delta_L < delta_U");
  if (std::isinf(lower) && std::isinf(upper))
    throw ConfigError("hypothesis needs at least one finite endpoint");
}

HypothesisShape Hypothesis::shape() const noexcept {
  if (std::isinf(upper_)) return HypothesisShape::one_sided_lower;
  if (std::isinf(lower_)) return HypothesisShape::one_sided_upper;
  return HypothesisShape::two_sided;
}

std::string Hypothesis::to_string() const {
  char buf[96];
  std::snprintf(buf, sizeof buf, "(%.17g, %.17g)", lower_, upper_);
  return buf;
}

const char* shape_name(HypothesisShape s) {
  switch (s) {
    case HypothesisShape::one_sided_lower: return "one_sided_lower";
    case HypothesisShape::one_sided_upper: return "one_sided_upper";
    case HypothesisShape::two_sided: return "two_sided";
  }
  return "?";
}

}  // namespace seqdesign
