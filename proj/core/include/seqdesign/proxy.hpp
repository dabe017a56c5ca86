#pragma once

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "seqdesign/hypothesis.hpp"
#include "seqdesign/schedule.hpp"

namespace seqdesign {

struct ProxyState {
  std::vector<double> theta;
  double delta = 0.0;
  double sigma_sq = 1.0;
  std::vector<double> u;  // one CDF-inversion coordinate per analysis, each in (0,1)

  void validate(std::size_t T) const;
};

// C_ij = min(1/c_i, 1/c_j).
Eigen::MatrixXd build_C(const std::vector<double>& c);

// Stage-wise MLE path obtained by inverting the conditional normal CDFs of
// Normal(delta 1, sigma^2/n C) at u. n is continuous so limits in n can be differentiated.
std::vector<double> sample_joint_mle(const ProxyState& state, const AnalysisSchedule& schedule, double n);

// Large-sample posterior probability of H1 at analysis t.
double proxy_tau(double delta_hat, const ProxyState& state, const Hypothesis& hyp, double c_t, double n);

// q-quantile of the limiting final-analysis posterior given the stage-t estimate and a
// standard normal Z.
double lambda_quantile(double delta_hat_t, const ProxyState& state, double c_t, double c_T, double n,
                       double q, double Z);

// Large-sample posterior predictive probability at interim t.
double proxy_tau_pred(double delta_hat_t, const ProxyState& state, const Hypothesis& hyp, double c_t,
                      double c_T, double n, double gamma_T, double q_L);

struct ProxyReference {
  ProxyState state;
  double c_t;
  double c_T;
  double n;
  double delta_hat;
};

// Lower quantile offset q_L in [0, 1 - gamma_T]. Two-sided hypotheses need a reference
// configuration at which the predictive proxy is maximised over a 1001-point grid.
double select_qL(const Hypothesis& hyp, double gamma_T, const std::optional<ProxyReference>& reference = std::nullopt);

// log p and log(1 - p) for p = Phi(hi) - Phi(lo), accurate in both tails.
struct LogProb {
  double log_p;
  double log_q;
  double logit() const { return log_p - log_q; }
};
LogProb log_interval_prob(double hi, double lo);

enum class ProxySummary { tau, tau_pred };

struct SlopeResult {
  double slope = 0.0;
  bool saturated = false;
};

struct SlopeQuery {
  ProxySummary summary = ProxySummary::tau;
  std::size_t stage = 0;  // 0-based
  double gamma_T = 0.9;
  double q_L = 0.0;
  bool marginal = false;  // marginal quantile path instead of the conditional one
};

// Central finite difference in n of the logit of a proxy summary along the u path.
// h <= 0 selects max(1, n/100).
SlopeResult numeric_limit_slope(const SlopeQuery& query, const ProxyState& state,
                                const AnalysisSchedule& schedule, const Hypothesis& hyp, double n,
                                double h = 0.0);

// Closed-form limiting slopes implied by the large-sample normal approximation.
double limiting_slope_tau(double delta, double sigma_sq, const Hypothesis& hyp, double c_t);
double limiting_slope_tau_pred(double delta, double sigma_sq, const Hypothesis& hyp, double c_t, double c_T);

}  // namespace seqdesign
