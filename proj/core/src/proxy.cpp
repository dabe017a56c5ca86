#include "seqdesign/proxy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Cholesky>

#include "seqdesign/error.hpp"
#include "seqdesign/numeric.hpp"

namespace seqdesign {

void ProxyState::validate(std::size_t T) const {
  if (!(sigma_sq > 0.0) || !std::isfinite(sigma_sq)) throw ContractViolation("proxy state: sigma_sq must be positive");
  if (u.size() != T) throw ContractViolation("proxy state: u must have one entry per analysis");
  for (double v : u)
    if (!(v > 0.0 && v < 1.0)) throw ContractViolation("proxy state: u entries must lie in (0,1)");
}

Eigen::MatrixXd build_C(const std::vector<double>& c) {
  const auto T = static_cast<Eigen::Index>(c.size());
  Eigen::MatrixXd C(T, T);
  for (Eigen::Index i = 0; i < T; ++i)
    for (Eigen::Index j = 0; j < T; ++j) C(i, j) = std::min(1.0 / c[static_cast<std::size_t>(i)], 1.0 / c[static_cast<std::size_t>(j)]);
  return C;
}

std::vector<double> sample_joint_mle(const ProxyState& state, const AnalysisSchedule& schedule, double n) {
  const std::size_t T = schedule.stages();
  state.validate(T);
  const Eigen::MatrixXd S = build_C(schedule.spacing()) * (state.sigma_sq / n);
  std::vector<double> out(T);
  Eigen::VectorXd prev(static_cast<Eigen::Index>(T));
  for (std::size_t t = 0; t < T; ++t) {
    const auto k = static_cast<Eigen::Index>(t);
    double mean = state.delta;
    double var = S(k, k);
    if (t > 0) {
      const Eigen::MatrixXd S11 = S.topLeftCorner(k, k);
      const Eigen::VectorXd s12 = S.block(0, k, k, 1);
      const Eigen::LDLT<Eigen::MatrixXd> ldlt(S11);
      const Eigen::VectorXd w = ldlt.solve(s12);
      mean += w.dot(prev.head(k) - Eigen::VectorXd::Constant(k, state.delta));
      var -= w.dot(s12);
    }
    out[t] = mean + std::sqrt(std::max(var, 0.0)) * normal_quantile(state.u[t]);
    prev(k) = out[t];
  }
  return out;
}

namespace {

double log_add(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(-std::fabs(a - b)));
}

// log(e^a - e^b) for a >= b.
double log_sub(double a, double b) {
  if (b == -kInf) return a;
  if (b >= a) return -kInf;
  return a + std::log1p(-std::exp(b - a));
}

}  // namespace

LogProb log_interval_prob(double hi, double lo) {
  if (!(hi > lo)) return {-kInf, 0.0};
  // p = Phi(hi) - Phi(lo); 1 - p = Phi(lo) + Phi(-hi)
  LogProb r;
  if (lo > 0.0) {
    r.log_p = log_sub(log_normal_cdf(-lo), log_normal_cdf(-hi));
  } else {
    r.log_p = log_sub(log_normal_cdf(hi), log_normal_cdf(lo));
  }
  r.log_q = log_add(log_normal_cdf(lo), log_normal_cdf(-hi));
  return r;
}

double proxy_tau(double delta_hat, const ProxyState& state, const Hypothesis& hyp, double c_t, double n) {
  const double s = std::sqrt(state.sigma_sq / (c_t * n));
  const double hi = std::isinf(hyp.upper()) ? kInf : (hyp.upper() - delta_hat) / s;
  const double lo = std::isinf(hyp.lower()) ? -kInf : (hyp.lower() - delta_hat) / s;
  const double p = lo > 0.0 ? normal_sf(lo) - normal_sf(hi) : normal_cdf(hi) - normal_cdf(lo);
  return std::max(0.0, p);
}

double lambda_quantile(double delta_hat_t, const ProxyState& state, double c_t, double c_T, double n,
                       double q, double Z) {
  if (!(c_t < c_T)) throw ContractViolation("lambda_quantile requires c_t < c_T");
  const double sigma = std::sqrt(state.sigma_sq);
  const double rn = std::sqrt(n);
  const double future_mean = delta_hat_t + Z * sigma / rn * std::sqrt(c_T / (c_t * (c_T - c_t)));
  return (c_t / c_T) * delta_hat_t + ((c_T - c_t) / c_T) * future_mean +
         normal_quantile(q) * sigma / (rn * std::sqrt(c_T));
}

namespace {

// Arguments of the two normal CDFs; +inf / -inf flag exact terms.
struct PredArgs {
  double hi;
  double lo;
};

PredArgs pred_args(double delta_hat_t, const ProxyState& state, const Hypothesis& hyp, double c_t, double c_T,
                   double n, double gamma_T, double q_L) {
  const double sigma = std::sqrt(state.sigma_sq);
  const double scale = sigma * std::sqrt((c_T - c_t) / (c_t * c_T)) / std::sqrt(n);
  const double k = std::sqrt((c_T - c_t) / c_t);
  PredArgs a;
  a.hi = std::isinf(hyp.upper()) ? kInf
                                 : (hyp.upper() - delta_hat_t) / scale - normal_quantile(std::min(1.0, q_L + gamma_T)) / k;
  a.lo = std::isinf(hyp.lower()) ? -kInf : (hyp.lower() - delta_hat_t) / scale - normal_quantile(q_L) / k;
  return a;
}

}  // namespace

double proxy_tau_pred(double delta_hat_t, const ProxyState& state, const Hypothesis& hyp, double c_t,
                      double c_T, double n, double gamma_T, double q_L) {
  if (!(c_t < c_T)) throw ContractViolation("proxy_tau_pred requires c_t < c_T");
  if (!(q_L >= 0.0 && q_L <= 1.0 - gamma_T + 1e-15)) throw ContractViolation("proxy_tau_pred: q_L outside [0, 1 - gamma_T]");
  const PredArgs a = pred_args(delta_hat_t, state, hyp, c_t, c_T, n, gamma_T, q_L);
  if (std::isnan(a.hi) || std::isnan(a.lo)) return 0.0;
  const double first = a.hi == kInf ? 1.0 : normal_cdf(a.hi);
  const double second = a.lo == -kInf ? 0.0 : normal_cdf(a.lo);
  return std::max(0.0, first - second);
}

double select_qL(const Hypothesis& hyp, double gamma_T, const std::optional<ProxyReference>& ref) {
  if (!(gamma_T > 0.0 && gamma_T < 1.0)) throw ContractViolation("select_qL: gamma_T must lie in (0,1)");
  switch (hyp.shape()) {
    case HypothesisShape::one_sided_upper: return 0.0;
    case HypothesisShape::one_sided_lower: return 1.0 - gamma_T;
    case HypothesisShape::two_sided: break;
  }
  if (!ref) throw MissingReferenceError("select_qL: two-sided hypotheses need a reference configuration");
  const double top = 1.0 - gamma_T;
  double best_q = 0.0, best_v = -1.0;
  for (int i = 0; i <= 1000; ++i) {
    const double q = top * i / 1000.0;
    const double v = proxy_tau_pred(ref->delta_hat, ref->state, hyp, ref->c_t, ref->c_T, ref->n, gamma_T, q);
    if (v > best_v + 1e-15) {
      best_v = v;
      best_q = q;
    }
  }
  return best_q;
}

namespace {

double delta_hat_at(const SlopeQuery& q, const ProxyState& state, const AnalysisSchedule& schedule, double n) {
  if (q.marginal) {
    const double c = schedule.c(q.stage);
    return state.delta + std::sqrt(state.sigma_sq / (c * n)) * normal_quantile(state.u[q.stage]);
  }
  return sample_joint_mle(state, schedule, n)[q.stage];
}

LogProb summary_logprob(const SlopeQuery& q, const ProxyState& state, const AnalysisSchedule& schedule,
                        const Hypothesis& hyp, double n) {
  const double dh = delta_hat_at(q, state, schedule, n);
  const double c_t = schedule.c(q.stage);
  if (q.summary == ProxySummary::tau) {
    const double s = std::sqrt(state.sigma_sq / (c_t * n));
    const double hi = std::isinf(hyp.upper()) ? kInf : (hyp.upper() - dh) / s;
    const double lo = std::isinf(hyp.lower()) ? -kInf : (hyp.lower() - dh) / s;
    return log_interval_prob(hi, lo);
  }
  const double c_T = schedule.spacing().back();
  const PredArgs a = pred_args(dh, state, hyp, c_t, c_T, n, q.gamma_T, q.q_L);
  return log_interval_prob(a.hi, a.lo);
}

}  // namespace

SlopeResult numeric_limit_slope(const SlopeQuery& query, const ProxyState& state,
                                const AnalysisSchedule& schedule, const Hypothesis& hyp, double n, double h) {
  if (query.stage >= schedule.stages()) throw StageIndexError("numeric_limit_slope: stage out of range");
  if (query.summary == ProxySummary::tau_pred && query.stage + 1 >= schedule.stages())
    throw StageIndexError("numeric_limit_slope: predictive summary needs an interim stage");
  if (h <= 0.0) h = std::max(1.0, n / 100.0);
  if (!(h < n)) throw ContractViolation("numeric_limit_slope: step must be smaller than n");
  const LogProb up = summary_logprob(query, state, schedule, hyp, n + h);
  const LogProb dn = summary_logprob(query, state, schedule, hyp, n - h);
  SlopeResult r;
  const double lu = up.logit(), ld = dn.logit();
  if (!std::isfinite(lu) || !std::isfinite(ld)) {
    r.saturated = true;
    return r;
  }
  r.slope = (lu - ld) / (2.0 * h);
  return r;
}

double limiting_slope_tau(double delta, double sigma_sq, const Hypothesis& hyp, double c_t) {
  const double dl = std::isinf(hyp.lower()) ? kInf : std::fabs(delta - hyp.lower());
  const double du = std::isinf(hyp.upper()) ? kInf : std::fabs(hyp.upper() - delta);
  const double m = std::min(dl, du);
  const double f2 = c_t * m * m / sigma_sq;
  return (hyp.contains(delta) ? 0.5 : -0.5) * f2;
}

double limiting_slope_tau_pred(double delta, double sigma_sq, const Hypothesis& hyp, double c_t, double c_T) {
  const double dl = std::isinf(hyp.lower()) ? kInf : std::fabs(delta - hyp.lower());
  const double du = std::isinf(hyp.upper()) ? kInf : std::fabs(hyp.upper() - delta);
  const double m = std::min(dl, du);
  const double f2 = c_t * c_T * m * m / (sigma_sq * (c_T - c_t));
  return (hyp.contains(delta) ? 0.5 : -0.5) * f2;
}

}  // namespace seqdesign
