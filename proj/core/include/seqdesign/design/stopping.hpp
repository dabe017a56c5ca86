#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "seqdesign/summary.hpp"
#include "seqdesign/thresholds.hpp"

namespace seqdesign {

enum class SummaryKind { tau, tau_P };
enum class Comparison { at_least, below };  // success: value >= threshold; failure: value < threshold
enum class ThresholdSlot { gamma, xi, eta, rho };

struct StopRule {
  SummaryKind summary;
  Comparison comparison;
  ThresholdSlot slot;

  static StopRule from_slot(ThresholdSlot s);
  bool is_success() const noexcept { return comparison == Comparison::at_least; }
};

// Rules per stage, applied in order; the first rule that fires ends the experiment.
struct StoppingPolicy {
  std::vector<std::vector<StopRule>> stages;

  // Success rules (gamma, eta) then failure rules (xi, rho) at each interim, using the
  // slots present in the threshold set; the final stage only checks tau_T >= gamma_T.
  static StoppingPolicy standard(std::size_t T, const ThresholdSet& thresholds, bool success_first = true);
  bool uses_tau_P() const noexcept;
  void validate(std::size_t T) const;
};

enum class StopReason { success, failure, none };

struct StopResult {
  bool nu = false;
  std::size_t stop_stage = 0;  // 1-based
  StopReason stopped_for = StopReason::none;
};

StopResult evaluate_stop(const SummaryRow& row, const ThresholdSet& thresholds, const StoppingPolicy& policy);

struct OCReport {
  long n = 0;
  std::string scenario;
  std::vector<double> cum_success;
  std::vector<double> cum_failure;
  std::vector<double> se_success;
  std::vector<double> se_failure;
  double nu_rate = 0.0;
  double nu_se = 0.0;
  double expected_n = 0.0;
  std::size_t replicates = 0;
};

OCReport operating_characteristics(const SummaryMatrix& matrix, const ThresholdSet& thresholds,
                                   const StoppingPolicy& policy);

// nu-rate only; the hot path used by tuning and sample size search.
double nu_rate(const SummaryMatrix& matrix, const ThresholdSet& thresholds, const StoppingPolicy& policy);

const char* reason_name(StopReason r);

}  // namespace seqdesign
