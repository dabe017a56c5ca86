#include "seqdesign/models/normal.hpp"

#include <cmath>
#include <cstdio>

#include "seqdesign/error.hpp"

namespace seqdesign {

NormalModel::NormalModel(NormalModelParams p) : p_(p) {
  if (!(p_.sigma > 0.0) || !std::isfinite(p_.sigma)) throw ConfigError("normal model: sigma must be positive");
  if (!(p_.prior_sd > 0.0)) throw ConfigError("normal model: prior_sd must be positive or inf");
  if (!std::isfinite(p_.prior_mean)) throw ConfigError("normal model: prior_mean must be finite");
  if (p_.closed_form_resolution < 1) throw ConfigError("normal model: resolution must be positive");
}

void NormalModel::generate(const std::vector<double>& theta, const StreamKey& key, std::size_t first,
                           std::size_t count, DataBlock& out) const {
  const double mu = theta.at(0);
  out.y.reserve(out.y.size() + count);
  for (std::size_t i = first; i < first + count; ++i) {
    RngStream rng(key.with_index(static_cast<std::uint32_t>(i)));
    out.y.push_back(mu + p_.sigma * rng.normal());
  }
}

std::pair<double, double> NormalModel::exact_posterior(const DataView& data) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) sum += data.y(i);
  const double n = static_cast<double>(data.size());
  const double s2 = p_.sigma * p_.sigma;
  if (std::isinf(p_.prior_sd)) {
    if (data.size() == 0) throw NumericError("normal model: flat prior with no data is improper");
    return {sum / n, p_.sigma / std::sqrt(n)};
  }
  const double prior_prec = 1.0 / (p_.prior_sd * p_.prior_sd);
  const double prec = prior_prec + n / s2;
  const double mean = (p_.prior_mean * prior_prec + sum / s2) / prec;
  return {mean, 1.0 / std::sqrt(prec)};
}

namespace {

class NormalTarget final : public MetropolisTarget {
 public:
  NormalTarget(double mean, double sd) : mean_(mean), inv_var_(1.0 / (sd * sd)) {}
  double log_density(const McmcState& x) override {
    const double d = x(0) - mean_;
    return -0.5 * d * d * inv_var_;
  }
  double delta(const McmcState& x) override { return x(0); }

 private:
  double mean_;
  double inv_var_;
};

}  // namespace

PosteriorFit NormalModel::fit(const DataView& data, const MCMCSettings& mcmc, const StreamKey& key) const {
  const auto [mean, sd] = exact_posterior(data);
  PosteriorFit f;
  f.dim = 1;
  if (p_.closed_form) {
    f.closed_form = true;
    f.mean = mean;
    f.sd = sd;
    f.resolution = p_.closed_form_resolution;
    return f;
  }
  // The posterior kernel is the conjugate normal; sampling it exercises the generic path.
  NormalTarget target(mean, sd);
  McmcState init(1);
  init(0) = mean;
  McmcMatrix cov(1, 1);
  cov(0, 0) = sd * sd;
  MetropolisOutput o = run_metropolis(target, init, cov, mcmc, key);
  f.delta = std::move(o.delta);
  f.states = std::move(o.states);
  f.acceptance = o.acceptance;
  f.rhat = o.rhat;
  f.resolution = f.delta.size();
  f.mean = mean;
  f.sd = sd;
  return f;
}

std::vector<double> NormalModel::draw_theta(const PosteriorFit& fit, RngStream& rng) const {
  if (fit.closed_form) return {fit.mean + fit.sd * rng.normal()};
  return {fit.states[pick_draw(fit, rng)]};
}

std::string NormalModel::describe() const {
  char buf[256];
  std::snprintf(buf, sizeof buf, "normal(sigma=%.17g, prior_mean=%.17g, prior_sd=%.17g, closed_form=%d)",
                p_.sigma, p_.prior_mean, p_.prior_sd, p_.closed_form ? 1 : 0);
  return buf;
}

NormalModel NormalModel::with_closed_form(bool on) const {
  NormalModelParams q = p_;
  q.closed_form = on;
  return NormalModel(q);
}

ModelPtr normal_model(double sigma, double prior_mean, double prior_sd) {
  NormalModelParams p;
  p.sigma = sigma;
  p.prior_mean = prior_mean;
  p.prior_sd = prior_sd;
  return std::make_shared<NormalModel>(p);
}

}  // namespace seqdesign
