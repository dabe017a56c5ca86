#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "seqdesign/hypothesis.hpp"
#include "seqdesign/models/model.hpp"
#include "seqdesign/numeric.hpp"
#include "seqdesign/scenario.hpp"
#include "seqdesign/schedule.hpp"
#include "seqdesign/summary.hpp"

namespace seqdesign {

struct RunPlan {
  ModelPtr model;
  Scenario scenario;
  Hypothesis hyp{0.0, kInf};
  AnalysisSchedule schedule{{1.0}, 1};
  std::size_t replicates = 1000;
  std::size_t inner_replicates = 1000;  // M
  MCMCSettings mcmc;
  MCMCSettings inner_mcmc;
  std::uint64_t base_seed = 1;
  bool compute_tau_P = false;
  double gamma_T_for_pred = 0.0;
  bool store_inner = true;
  Bandwidth bandwidth = Bandwidth::silverman;

  void validate() const;
};

using ProgressFn = std::function<void(std::size_t done, std::size_t total)>;

// One replicate: theta from the scenario, full-horizon data, tau at every stage and,
// when requested, tau_P at every interim. inner (optional) receives (T-1) * M values.
SummaryRow simulate_replicate(const RunPlan& plan, std::size_t r, std::vector<double>* inner = nullptr);

// R replicates across workers threads. Output is independent of the worker count.
SummaryMatrix simulate_summary_matrix(const RunPlan& plan, unsigned workers = 1,
                                      const ProgressFn& progress = {});

struct CouplingReport {
  std::vector<double> rank_correlation;  // Spearman between tau_t and tau_{t+1}; NaN when undefined
  std::vector<double> agreement;         // fraction with (tau_P,t >= eta) == (tau_T >= gamma_T); NaN without tau_P
};

CouplingReport monotone_coupling_check(const SummaryMatrix& matrix, double pred_threshold = 0.5);

double spearman(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace seqdesign
