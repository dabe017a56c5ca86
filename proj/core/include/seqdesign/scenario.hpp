#pragma once

#include <string>

#include "seqdesign/rng.hpp"

namespace seqdesign {

enum class ScenarioLabel { null, alternative };
enum class ScenarioKind { conditional, predictive };

// Distribution of the target delta across replicates. Models map a delta to a full theta.
struct DeltaSampler {
  enum class Family { fixed, uniform, normal };
  Family family = Family::fixed;
  double a = 0.0;  // fixed value, uniform lower bound, or normal mean
  double b = 0.0;  // uniform upper bound or normal sd

  static DeltaSampler fixed(double v) { return {Family::fixed, v, 0.0}; }
  static DeltaSampler uniform(double lo, double hi) { return {Family::uniform, lo, hi}; }
  static DeltaSampler normal(double mean, double sd) { return {Family::normal, mean, sd}; }

  double draw(RngStream& rng) const;
  void validate() const;
};

struct Scenario {
  ScenarioLabel label = ScenarioLabel::alternative;
  ScenarioKind kind = ScenarioKind::conditional;
  DeltaSampler sampler;
  std::string descriptor;

  // Conditional scenarios must use a fixed delta.
  void validate() const;
};

const char* label_name(ScenarioLabel l);
const char* kind_name(ScenarioKind k);

}  // namespace seqdesign
