#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "seqdesign/scenario.hpp"
#include "seqdesign/schedule.hpp"

namespace seqdesign {

struct SummaryRow {
  std::vector<double> theta;
  double delta = 0.0;
  std::vector<double> tau;    // length T
  std::vector<double> tau_P;  // length T-1, or empty
};

// Joint sampling distribution estimate of the posterior summaries at one n.
struct SummaryMatrix {
  std::vector<SummaryRow> rows;
  AnalysisSchedule schedule{{1.0}, 1};
  Scenario scenario;
  std::uint64_t seed = 0;
  std::size_t tau_draws = 1;   // clamp resolution of tau
  std::size_t pred_draws = 0;  // M, clamp resolution of tau_P
  double pred_gamma = 0.0;     // gamma_T used for tau_P
  // Optional inner final-analysis probabilities behind each tau_P, laid out as
  // inner[(r * (T-1) + t) * pred_draws + m].
  std::vector<double> inner;

  std::size_t replicates() const noexcept { return rows.size(); }
  std::size_t stages() const noexcept { return schedule.stages(); }
  bool has_tau_P() const noexcept { return !rows.empty() && !rows.front().tau_P.empty(); }
  bool has_inner() const noexcept { return !inner.empty(); }
  double inner_value(std::size_t r, std::size_t t, std::size_t m) const;

  // Recompute tau_P for another gamma_T from the stored inner probabilities.
  // Returns a copy unchanged when inner storage is absent or gamma_T is unchanged.
  SummaryMatrix with_pred_gamma(double gamma_T) const;
  // Rows indexed by idx, in that order; inner storage follows.
  SummaryMatrix subset(const std::vector<std::size_t>& idx) const;
  // Throws ContractViolation when shapes disagree with the schedule.
  void validate() const;
};

}  // namespace seqdesign
