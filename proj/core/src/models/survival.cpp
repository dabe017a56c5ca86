#include "seqdesign/models/survival.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <boost/math/tools/roots.hpp>

#include "seqdesign/error.hpp"

namespace seqdesign {

namespace {

struct SurvStats {
  double events[2] = {0.0, 0.0};
  double exposure[2] = {0.0, 0.0};
};

SurvStats stats_of(const DataView& d) {
  SurvStats s;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const int a = d.arm(i);
    s.exposure[a] += d.y(i);
    s.events[a] += d.status(i) == 0 ? 1.0 : 0.0;
  }
  return s;
}

class SurvivalTarget final : public MetropolisTarget {
 public:
  SurvivalTarget(const SurvStats& s, double mu, double sd) : s_(s), mu_(mu), inv_var_(1.0 / (sd * sd)) {}
  double log_density(const McmcState& x) override {
    double lp = 0.0;
    for (int k = 0; k < 2; ++k) {
      lp += s_.events[k] * x(k) - std::exp(x(k)) * s_.exposure[k];
      lp -= 0.5 * (x(k) - mu_) * (x(k) - mu_) * inv_var_;
    }
    return lp;
  }
  double delta(const McmcState& x) override { return std::exp(x(1) - x(0)); }

 private:
  SurvStats s_;
  double mu_;
  double inv_var_;
};

}  // namespace

SurvivalModel::SurvivalModel(SurvivalParams p) : p_(p) {
  if (!(p_.control_rate > 0.0)) throw ConfigError("survival model: control_rate must be positive");
  if (!(p_.admin_censor_time > 0.0)) throw ConfigError("survival model: admin_censor_time must be positive");
  if (!(p_.dropout_prob >= 0.0 && p_.dropout_prob < 1.0))
    throw ConfigError("survival model: dropout_prob must lie in [0,1)");
  if (!(p_.prior_sd > 0.0) || !std::isfinite(p_.prior_sd))
    throw ConfigError("survival model: prior_sd must be positive and finite");
}

std::vector<double> SurvivalModel::theta_for_delta(double delta) const {
  if (!(delta > 0.0)) throw ConfigError("survival model: rate ratio must be positive");
  return {p_.control_rate, p_.control_rate * delta};
}

double SurvivalModel::delta_of_theta(const std::vector<double>& theta) const { return theta.at(1) / theta.at(0); }

void SurvivalModel::generate(const std::vector<double>& theta, const StreamKey& key, std::size_t first,
                             std::size_t count, DataBlock& out) const {
  const double A = p_.admin_censor_time;
  out.reserve(out.size() + count);
  for (std::size_t i = first; i < first + count; ++i) {
    RngStream rng(key.with_index(static_cast<std::uint32_t>(i)));
    const int arm = static_cast<int>(i % 2);
    const double event = rng.exponential() / theta.at(static_cast<std::size_t>(arm));
    const bool candidate = rng.uniform() < p_.dropout_prob;
    const double drop = rng.uniform(0.0, A);
    double time = event;
    std::int8_t status = 0;
    if (candidate && drop < std::min(event, A)) {
      time = drop;
      status = 2;
    } else if (A < event) {
      time = A;
      status = 1;
    }
    out.y.push_back(time);
    out.arm.push_back(static_cast<std::int8_t>(arm));
    out.status.push_back(status);
  }
}

PosteriorFit SurvivalModel::fit(const DataView& data, const MCMCSettings& mcmc, const StreamKey& key) const {
  const SurvStats s = stats_of(data);
  McmcState init(2);
  McmcMatrix cov = McmcMatrix::Zero(2, 2);
  const double prior_prec = 1.0 / (p_.prior_sd * p_.prior_sd);
  bool degenerate = false;
  for (int k = 0; k < 2; ++k) {
    const double d = s.events[k];
    if (d == 0.0) degenerate = true;
    const double exposure = s.exposure[k] > 0.0 ? s.exposure[k] : 1.0;
    init(k) = std::log((d + 0.5) / exposure);
    cov(k, k) = 1.0 / (d + 0.5 + prior_prec);
  }
  SurvivalTarget target(s, p_.prior_mean, p_.prior_sd);
  MetropolisOutput o = run_metropolis(target, init, cov, mcmc, key);
  PosteriorFit f;
  f.delta = std::move(o.delta);
  f.states = std::move(o.states);
  f.dim = 2;
  f.acceptance = o.acceptance;
  f.rhat = o.rhat;
  f.resolution = f.delta.size();
  f.degenerate = degenerate;
  return f;
}

double SurvivalModel::event_probability(double rate) const {
  // P(event observed) = integral over [0, A] of rate e^{-rate t} (1 - p t / A) dt, by Simpson's rule.
  const double A = p_.admin_censor_time, p = p_.dropout_prob;
  constexpr int kPanels = 2000;
  const double h = A / kPanels;
  double acc = 0.0;
  for (int j = 0; j <= kPanels; ++j) {
    const double t = j * h;
    const double f = rate * std::exp(-rate * t) * (1.0 - p * t / A);
    const double w = (j == 0 || j == kPanels) ? 1.0 : (j % 2 ? 4.0 : 2.0);
    acc += w * f;
  }
  return acc * h / 3.0;
}

double SurvivalModel::admin_censor_fraction(double rate) const {
  return (1.0 - p_.dropout_prob) * std::exp(-rate * p_.admin_censor_time);
}

double SurvivalModel::dropout_fraction(double rate) const {
  const double x = rate * p_.admin_censor_time;
  return p_.dropout_prob * (-std::expm1(-x)) / x;
}

double SurvivalModel::sigma_sq(const std::vector<double>& theta) const {
  // Per-subject information for each rate is P(event)/(2 rate^2) under 1:1 allocation;
  // the delta method for the ratio gives 2 delta^2 (1/pi_c + 1/pi_t).
  const double pc = event_probability(theta.at(0));
  const double pt = event_probability(theta.at(1));
  const double d = theta.at(1) / theta.at(0);
  return 2.0 * d * d * (1.0 / pc + 1.0 / pt);
}

std::vector<double> SurvivalModel::draw_theta(const PosteriorFit& fit, RngStream& rng) const {
  const std::size_t i = pick_draw(fit, rng);
  return {std::exp(fit.states[2 * i]), std::exp(fit.states[2 * i + 1])};
}

std::string SurvivalModel::describe() const {
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "survival(control_rate=%.17g, admin_censor_time=%.17g, dropout_prob=%.17g, prior=N(%.17g, %.17g^2))",
                p_.control_rate, p_.admin_censor_time, p_.dropout_prob, p_.prior_mean, p_.prior_sd);
  return buf;
}

SurvivalCalibration calibrate_survival(double A, double admin_fraction, double dropout_fraction) {
  if (!(A > 0.0) || !(admin_fraction > 0.0) || !(dropout_fraction >= 0.0) ||
      !(admin_fraction + dropout_fraction < 1.0))
    throw ConfigError("calibrate_survival: fractions must be positive and sum below 1");
  // With p = 1 - admin e^{rate A}, solve p (1 - e^{-x}) / x = dropout for x = rate A.
  auto p_of = [&](double x) { return 1.0 - admin_fraction * std::exp(x); };
  auto g = [&](double x) { return p_of(x) * (-std::expm1(-x)) / x - dropout_fraction; };
  const double x_hi = -std::log(admin_fraction);  // p = 0 here
  const double x_lo = 1e-9;
  if (dropout_fraction == 0.0) return {x_hi / A, 0.0};
  if (!(g(x_lo) > 0.0)) throw ConfigError("calibrate_survival: requested fractions are infeasible");
  boost::uintmax_t iters = 200;
  auto r = boost::math::tools::toms748_solve(g, x_lo, x_hi, boost::math::tools::eps_tolerance<double>(50), iters);
  const double x = 0.5 * (r.first + r.second);
  return {x / A, p_of(x)};
}

ModelPtr survival_model(double control_rate, double admin_censor_time, double dropout_prob) {
  SurvivalParams p;
  p.control_rate = control_rate;
  p.admin_censor_time = admin_censor_time;
  p.dropout_prob = dropout_prob;
  return std::make_shared<SurvivalModel>(p);
}

}  // namespace seqdesign
