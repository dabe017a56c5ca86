#include "seqdesign/design/stopping.hpp"

#include <cmath>

#include "seqdesign/error.hpp"
#include "seqdesign/scenario.hpp"

namespace seqdesign {

StopRule StopRule::from_slot(ThresholdSlot s) {
  switch (s) {
    case ThresholdSlot::gamma: return {SummaryKind::tau, Comparison::at_least, s};
    case ThresholdSlot::xi: return {SummaryKind::tau, Comparison::below, s};
    case ThresholdSlot::eta: return {SummaryKind::tau_P, Comparison::at_least, s};
    case ThresholdSlot::rho: return {SummaryKind::tau_P, Comparison::below, s};
  }
  return {SummaryKind::tau, Comparison::at_least, ThresholdSlot::gamma};
}

StoppingPolicy StoppingPolicy::standard(std::size_t T, const ThresholdSet& th, bool success_first) {
  StoppingPolicy p;
  p.stages.resize(T);
  for (std::size_t t = 0; t + 1 < T; ++t) {
    std::vector<StopRule> succ{StopRule::from_slot(ThresholdSlot::gamma)};
    if (th.eta) succ.push_back(StopRule::from_slot(ThresholdSlot::eta));
    std::vector<StopRule> fail;
    if (th.xi) fail.push_back(StopRule::from_slot(ThresholdSlot::xi));
    if (th.rho) fail.push_back(StopRule::from_slot(ThresholdSlot::rho));
    auto& out = p.stages[t];
    const auto& first = success_first ? succ : fail;
    const auto& second = success_first ? fail : succ;
    out.insert(out.end(), first.begin(), first.end());
    out.insert(out.end(), second.begin(), second.end());
  }
  p.stages[T - 1] = {StopRule::from_slot(ThresholdSlot::gamma)};
  return p;
}

bool StoppingPolicy::uses_tau_P() const noexcept {
  for (const auto& s : stages)
    for (const auto& r : s)
      if (r.summary == SummaryKind::tau_P) return true;
  return false;
}

void StoppingPolicy::validate(std::size_t T) const {
  if (stages.size() != T) throw ConfigError("stopping policy must list rules for every analysis");
  const auto& last = stages.back();
  if (last.size() != 1 || last[0].slot != ThresholdSlot::gamma)
    throw ConfigError("the final analysis must apply exactly tau_T >= gamma_T");
  for (const auto& s : stages)
    for (const auto& r : s) {
      const StopRule canonical = StopRule::from_slot(r.slot);
      if (canonical.summary != r.summary || canonical.comparison != r.comparison)
        throw ConfigError("stopping rule pairs a threshold slot with the wrong summary or comparison");
    }
}

namespace {

inline const std::vector<double>* slot_values(const ThresholdSet& th, ThresholdSlot s) {
  switch (s) {
    case ThresholdSlot::gamma: return &th.gamma;
    case ThresholdSlot::xi: return th.xi ? &*th.xi : nullptr;
    case ThresholdSlot::eta: return th.eta ? &*th.eta : nullptr;
    case ThresholdSlot::rho: return th.rho ? &*th.rho : nullptr;
  }
  return nullptr;
}

}  // namespace

StopResult evaluate_stop(const SummaryRow& row, const ThresholdSet& th, const StoppingPolicy& policy) {
  const std::size_t T = row.tau.size();
  if (policy.stages.size() != T) throw ConfigError("stopping policy and summary row disagree on T");
  for (std::size_t t = 0; t < T; ++t) {
    for (const StopRule& rule : policy.stages[t]) {
      double value;
      if (rule.summary == SummaryKind::tau) {
        value = row.tau[t];
      } else {
        if (row.tau_P.size() <= t) throw MissingSummaryError("stopping rule needs tau_P but the matrix has none");
        value = row.tau_P[t];
      }
      const std::vector<double>* thr = slot_values(th, rule.slot);
      if (!thr || thr->size() <= t) throw MissingSummaryError("stopping rule references a missing threshold");
      const double c = (*thr)[t];
      const bool fire = rule.comparison == Comparison::at_least ? value >= c : value < c;
      if (fire) {
        StopResult r;
        r.stop_stage = t + 1;
        r.nu = rule.is_success();
        r.stopped_for = r.nu ? StopReason::success : StopReason::failure;
        return r;
      }
    }
  }
  StopResult r;
  r.stop_stage = T;
  return r;
}

OCReport operating_characteristics(const SummaryMatrix& m, const ThresholdSet& th, const StoppingPolicy& policy) {
  const std::size_t T = m.stages();
  const std::size_t R = m.replicates();
  if (R < 1) throw ContractViolation("operating characteristics need at least one replicate");
  const std::vector<long> sizes = m.schedule.sizes();
  std::vector<double> succ(T, 0.0), fail(T, 0.0);
  double total_n = 0.0;
  for (const auto& row : m.rows) {
    const StopResult s = evaluate_stop(row, th, policy);
    if (s.stopped_for == StopReason::success) succ[s.stop_stage - 1] += 1.0;
    if (s.stopped_for == StopReason::failure) fail[s.stop_stage - 1] += 1.0;
    total_n += static_cast<double>(sizes[s.stop_stage - 1]);
  }
  OCReport oc;
  oc.n = m.schedule.n();
  oc.scenario = label_name(m.scenario.label);
  oc.replicates = R;
  const double Rd = static_cast<double>(R);
  double cs = 0.0, cf = 0.0;
  auto se = [Rd](double p) { return std::sqrt(p * (1.0 - p) / Rd); };
  for (std::size_t t = 0; t < T; ++t) {
    cs += succ[t];
    cf += fail[t];
    oc.cum_success.push_back(cs / Rd);
    oc.cum_failure.push_back(cf / Rd);
    oc.se_success.push_back(se(cs / Rd));
    oc.se_failure.push_back(se(cf / Rd));
  }
  oc.nu_rate = oc.cum_success.back();
  oc.nu_se = oc.se_success.back();
  oc.expected_n = total_n / Rd;
  return oc;
}

double nu_rate(const SummaryMatrix& m, const ThresholdSet& th, const StoppingPolicy& policy) {
  if (m.rows.empty()) throw ContractViolation("nu_rate needs at least one replicate");
  std::size_t hits = 0;
  for (const auto& row : m.rows) hits += evaluate_stop(row, th, policy).nu;
  return static_cast<double>(hits) / static_cast<double>(m.rows.size());
}

const char* reason_name(StopReason r) {
  switch (r) {
    case StopReason::success: return "success";
    case StopReason::failure: return "failure";
    case StopReason::none: return "none";
  }
  return "?";
}

}  // namespace seqdesign
