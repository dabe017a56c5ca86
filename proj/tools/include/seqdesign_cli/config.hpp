#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "seqdesign/design/spending.hpp"
#include "seqdesign/design/stopping.hpp"
#include "seqdesign/design/surface.hpp"
#include "seqdesign/engine.hpp"
#include "seqdesign/hypothesis.hpp"
#include "seqdesign/models/beta_quantile.hpp"
#include "seqdesign/models/kde.hpp"
#include "seqdesign/models/normal.hpp"
#include "seqdesign/models/survival.hpp"
#include "seqdesign/scenario.hpp"
#include "seqdesign/thresholds.hpp"

namespace seqdesign::cli {

struct ModelConfig {
  std::string name = "normal";  // normal | beta_quantile | survival
  NormalModelParams normal;
  BetaQuantileParams beta;
  SurvivalParams survival;
  // Survival only: solve control_rate and dropout_prob from these control-arm fractions.
  std::optional<double> admin_fraction;
  std::optional<double> dropout_fraction;
};

enum class TuneStrategy { final_gamma, proportional, fixed };

struct ThresholdConfig {
  std::optional<std::vector<double>> gamma;  // absent = "auto"
  std::optional<std::vector<double>> xi;
  std::optional<std::vector<double>> eta;
  std::optional<std::vector<double>> rho;
  TuneStrategy strategy = TuneStrategy::final_gamma;
};

struct DesignConfig {
  ModelConfig model;
  Hypothesis hyp{0.0, kInf};
  std::vector<double> c{1.0};
  double Gamma0 = 0.025;
  double Gamma1 = 0.8;
  std::size_t replicates = 1000;
  std::size_t inner_replicates = 1000;
  MCMCSettings mcmc;
  MCMCSettings inner_mcmc;
  Scenario null_scenario;
  Scenario alt_scenario;
  ThresholdConfig thresholds;
  bool success_first = true;
  long n_a = 100;
  std::optional<long> n_b;
  long n_min = 1;
  long n_max = 1000;
  std::size_t subgroups = 1;
  PairingMode pairing = PairingMode::per_summary;
  Bandwidth bandwidth = Bandwidth::silverman;
  bool confirm = false;
  std::size_t bootstrap = 0;  // resamples; 0 disables bands in the design command
  double bootstrap_level = 0.95;
  std::size_t spending_paths = 1000000;
  std::uint64_t seed = 1;
  unsigned workers = 1;
};

// Parses a TOML document. Unknown keys and bad values raise ConfigError with the
// file position of the offending entry.
DesignConfig parse_config(const std::string& text, const std::string& source = "config");
DesignConfig load_config(const std::string& path);
std::string serialize_config(const DesignConfig& cfg);

ModelPtr build_model(const ModelConfig& m);
const Scenario& scenario_by_name(const DesignConfig& cfg, const std::string& name);

// Interim-plus-final gamma used before tuning: explicit values, or the spending
// approximation (final entry included for the proportional recipe, else 1).
ThresholdSet initial_thresholds(const DesignConfig& cfg);
StoppingPolicy policy_for(const DesignConfig& cfg, const ThresholdSet& th);

// Base RunPlan at stage-1 size n under the given scenario.
RunPlan run_plan(const DesignConfig& cfg, const Scenario& scenario, long n, std::uint64_t seed,
                 double pred_gamma);

// Fallbacks from SEQDESIGN_WORKERS / SEQDESIGN_SEED applied beneath config values.
unsigned env_workers(unsigned fallback);
std::uint64_t env_seed(std::uint64_t fallback);

// Threshold fragment files.
std::string serialize_thresholds(const ThresholdSet& th, const std::vector<std::string>& audit = {});
ThresholdSet load_thresholds(const std::string& path);
ThresholdSet parse_thresholds(const std::string& text, const std::string& source = "thresholds");

std::string strategy_name(TuneStrategy s);

}  // namespace seqdesign::cli
