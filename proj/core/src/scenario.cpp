#include "seqdesign/scenario.hpp"

#include <cmath>

#include "seqdesign/error.hpp"

namespace seqdesign {

double DeltaSampler::draw(RngStream& rng) const {
  switch (family) {
    case Family::fixed: return a;
    case Family::uniform: return rng.uniform(a, b);
    case Family::normal: return a + b * rng.normal();
  }
  return a;
}

void DeltaSampler::validate() const {
  if (!std::isfinite(a) || !std::isfinite(b)) throw ConfigError("scenario delta parameters must be finite");
  if (family == Family::uniform && !(a < b)) throw ConfigError("uniform delta sampler needs lower < upper");
  if (family == Family::normal && !(b > 0.0)) throw ConfigError("normal delta sampler needs sd > 0");
}

void Scenario::validate() const {
  sampler.validate();
  if (kind == ScenarioKind::conditional && sampler.family != DeltaSampler::Family::fixed)
    throw ConfigError("conditional scenario must use a fixed delta");
}

const char* label_name(ScenarioLabel l) { return l == ScenarioLabel::null ? "null" : "alternative"; }

const char* kind_name(ScenarioKind k) {
  return k == ScenarioKind::conditional ? "conditional" : "predictive";
}

}  // namespace seqdesign
