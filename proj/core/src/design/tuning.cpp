#include "seqdesign/design/tuning.hpp"

#include <algorithm>
#include <cstdio>

#include "seqdesign/error.hpp"

namespace seqdesign {

namespace {

std::string audit_line(const char* what, double value, double rate) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "%s=%.17g null_nu_rate=%.17g", what, value, rate);
  return buf;
}

const SummaryMatrix& refreshed(const SummaryMatrix& m, const ThresholdSet& th, const StoppingPolicy& policy,
                               SummaryMatrix& scratch) {
  if (!policy.uses_tau_P() || !m.has_inner() || th.gamma.back() == m.pred_gamma) return m;
  scratch = m.with_pred_gamma(th.gamma.back());
  return scratch;
}

[[noreturn]] void infeasible(const SummaryMatrix& m, const ThresholdSet& th, const StoppingPolicy& policy,
                             double Gamma0) {
  SummaryMatrix scratch;
  const OCReport oc = operating_characteristics(refreshed(m, th, policy, scratch), th, policy);
  std::size_t stage = oc.cum_success.size();
  for (std::size_t t = 0; t < oc.cum_success.size(); ++t)
    if (oc.cum_success[t] > Gamma0) {
      stage = t + 1;
      break;
    }
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "type I bound %.6g unattainable: cumulative null success reaches %.6g by stage %zu even with gamma_T = 1",
                Gamma0, oc.cum_success[stage - 1], stage);
  throw InfeasibleError(buf, static_cast<int>(stage));
}

}  // namespace

double null_rate(const SummaryMatrix& m, const ThresholdSet& th, const StoppingPolicy& policy) {
  SummaryMatrix scratch;
  return nu_rate(refreshed(m, th, policy, scratch), th, policy);
}

TuneResult tune_final_gamma(const SummaryMatrix& m, const ThresholdSet& thresholds, const StoppingPolicy& policy,
                            double Gamma0) {
  const std::size_t T = m.stages();
  thresholds.validate(T);
  std::vector<double> cand;
  cand.reserve(m.replicates() + 1);
  for (const auto& row : m.rows) cand.push_back(row.tau[T - 1]);
  cand.push_back(1.0);
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

  TuneResult res;
  auto eval = [&](double g) {
    std::vector<double> gamma = thresholds.gamma;
    gamma[T - 1] = g;
    const double rate = null_rate(m, thresholds.with_gamma(gamma), policy);
    res.audit.push_back(audit_line("gamma_T", g, rate));
    return rate;
  };
  // The null rate is non-increasing in gamma_T; binary search for the first feasible candidate.
  std::size_t lo = 0, hi = cand.size() - 1;
  const double top_rate = eval(cand[hi]);
  if (top_rate > Gamma0) {
    std::vector<double> gamma = thresholds.gamma;
    gamma[T - 1] = 1.0;
    infeasible(m, thresholds.with_gamma(gamma), policy, Gamma0);
  }
  double best_rate = top_rate;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    const double r = eval(cand[mid]);
    if (r <= Gamma0) {
      hi = mid;
      best_rate = r;
    } else {
      lo = mid + 1;
    }
  }
  std::vector<double> gamma = thresholds.gamma;
  gamma[T - 1] = cand[hi];
  res.thresholds = thresholds.with_gamma(gamma);
  res.achieved_rate = best_rate;
  res.audit.push_back(audit_line("selected_gamma_T", cand[hi], res.achieved_rate));
  return res;
}

TuneResult tune_proportional(const SummaryMatrix& m, const ThresholdSet& initial, const StoppingPolicy& policy,
                             double Gamma0, double tolerance) {
  const std::size_t T = m.stages();
  initial.validate(T);
  for (double g : initial.gamma)
    if (!(g > 0.0 && g < 1.0)) throw ConfigError("proportional tuning needs initial gamma strictly inside (0,1)");
  TuneResult res;
  auto scaled = [&](double kappa) {
    std::vector<double> g(initial.gamma.size());
    for (std::size_t t = 0; t < g.size(); ++t) g[t] = 1.0 - kappa * (1.0 - initial.gamma[t]);
    return initial.with_gamma(g);
  };
  auto eval = [&](double kappa) {
    const double rate = null_rate(m, scaled(kappa), policy);
    res.audit.push_back(audit_line("kappa", kappa, rate));
    return rate;
  };
  if (Gamma0 <= 0.0) {
    res.kappa = 0.0;
    res.thresholds = scaled(0.0);
    res.achieved_rate = null_rate(m, res.thresholds, policy);
    res.audit.push_back(audit_line("selected_kappa", 0.0, res.achieved_rate));
    return res;
  }
  double rate = eval(1.0);
  if (rate <= Gamma0) {
    res.kappa = 1.0;
    res.thresholds = initial;
    res.achieved_rate = rate;
    res.audit.push_back(audit_line("selected_kappa", 1.0, rate));
    return res;
  }
  if (eval(0.0) > Gamma0) infeasible(m, scaled(0.0), policy, Gamma0);
  double lo = 0.0, hi = 1.0;  // lo feasible, hi infeasible
  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    if (eval(mid) <= Gamma0) lo = mid;
    else hi = mid;
  }
  res.kappa = lo;
  res.thresholds = scaled(lo);
  res.achieved_rate = null_rate(m, res.thresholds, policy);
  res.audit.push_back(audit_line("selected_kappa", lo, res.achieved_rate));
  return res;
}

}  // namespace seqdesign
