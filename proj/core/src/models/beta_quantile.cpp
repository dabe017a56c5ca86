#include "seqdesign/models/beta_quantile.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <Eigen/Dense>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/trigamma.hpp>

#include "seqdesign/error.hpp"
#include "seqdesign/models/beta_math.hpp"

namespace seqdesign {

namespace {

struct BetaStats {
  double n = 0.0;
  double s1 = 0.0;  // sum log y
  double s2 = 0.0;  // sum log(1 - y)
  double sy = 0.0;
  double syy = 0.0;
};

BetaStats stats_of(const DataView& d) {
  BetaStats s;
  s.n = static_cast<double>(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double y = d.y(i);
    s.s1 += std::log(y);
    s.s2 += std::log1p(-y);
    s.sy += y;
    s.syy += y * y;
  }
  return s;
}

Eigen::Matrix2d fisher_unit(double a, double b) {
  const double tab = boost::math::trigamma(a + b);
  Eigen::Matrix2d I;
  I << boost::math::trigamma(a) - tab, -tab, -tab, boost::math::trigamma(b) - tab;
  return I;
}

double loglik(const BetaStats& s, double a, double b) {
  return s.n * (log_gamma(a + b) - log_gamma(a) - log_gamma(b)) + (a - 1.0) * s.s1 + (b - 1.0) * s.s2;
}

std::vector<double> mle_of(const BetaStats& s) {
  if (s.n < 2.0) return {1.0, 1.0};
  const double m = s.sy / s.n;
  const double v = (s.syy - s.n * m * m) / (s.n - 1.0);
  if (!(v > 0.0) || !(m > 0.0 && m < 1.0)) return {1.0, 1.0};
  const double common = std::max(m * (1.0 - m) / v - 1.0, 1e-3);
  double a = m * common, b = (1.0 - m) * common;
  double ll = loglik(s, a, b);
  for (int it = 0; it < 100; ++it) {
    const double dab = boost::math::digamma(a + b);
    Eigen::Vector2d g(s.n * (dab - boost::math::digamma(a)) + s.s1, s.n * (dab - boost::math::digamma(b)) + s.s2);
    Eigen::Vector2d step = (s.n * fisher_unit(a, b)).ldlt().solve(g);
    double t = 1.0;
    bool improved = false;
    for (int h = 0; h < 40; ++h, t *= 0.5) {
      const double na = a + t * step(0), nb = b + t * step(1);
      if (!(na > 0.0 && nb > 0.0)) continue;
      const double nll = loglik(s, na, nb);
      if (nll >= ll) {
        improved = std::fabs(na - a) > 1e-12 * a || std::fabs(nb - b) > 1e-12 * b;
        a = na;
        b = nb;
        ll = nll;
        break;
      }
    }
    if (!improved) break;
  }
  return {a, b};
}

class BetaTarget final : public MetropolisTarget {
 public:
  BetaTarget(const BetaStats& s, const BetaQuantileParams& p) : s_(s), p_(p) {}

  double log_density(const McmcState& x) override {
    if (x(0) < p_.log_alpha_min || x(0) > p_.log_alpha_max || x(1) < p_.log_beta_min ||
        x(1) > p_.log_beta_max)
      return -INFINITY;
    const double a = std::exp(x(0)), b = std::exp(x(1));
    const double la = log_gamma(a), lb = log_gamma(b), lab = log_gamma(a + b);
    last_x0_ = x(0);
    last_x1_ = x(1);
    last_lbeta_ = la + lb - lab;
    return -s_.n * last_lbeta_ + (a - 1.0) * s_.s1 + (b - 1.0) * s_.s2;
  }

  double delta(const McmcState& x) override {
    const double a = std::exp(x(0)), b = std::exp(x(1));
    const double lbeta = (x(0) == last_x0_ && x(1) == last_x1_) ? last_lbeta_ : log_beta(a, b);
    last_delta_ = beta_upper_quantile(a, b, 1.0 - p_.q, lbeta, last_delta_);
    return last_delta_;
  }

 private:
  BetaStats s_;
  BetaQuantileParams p_;
  double last_x0_ = NAN, last_x1_ = NAN, last_lbeta_ = 0.0;
  double last_delta_ = -1.0;
};

}  // namespace

BetaQuantileModel::BetaQuantileModel(BetaQuantileParams p) : p_(p) {
  if (!(p_.q > 0.0 && p_.q < 1.0)) throw ConfigError("beta_quantile model: q must lie in (0,1)");
  if (!(p_.scenario_alpha > 0.0)) throw ConfigError("beta_quantile model: scenario_alpha must be positive");
  if (!(p_.log_alpha_min < p_.log_alpha_max) || !(p_.log_beta_min < p_.log_beta_max))
    throw ConfigError("beta_quantile model: prior box bounds must be ordered");
}

std::vector<double> BetaQuantileModel::theta_for_delta(double delta) const {
  if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("beta_quantile model: delta must lie in (0,1)");
  const double b = boost::math::ibeta_invb(p_.scenario_alpha, delta, p_.q);
  return {p_.scenario_alpha, b};
}

double BetaQuantileModel::delta_of_theta(const std::vector<double>& theta) const {
  return beta_quantile(theta.at(0), theta.at(1), p_.q);
}

void BetaQuantileModel::generate(const std::vector<double>& theta, const StreamKey& key,
                                 std::size_t first, std::size_t count, DataBlock& out) const {
  const double a = theta.at(0), b = theta.at(1);
  out.y.reserve(out.y.size() + count);
  for (std::size_t i = first; i < first + count; ++i) {
    RngStream rng(key.with_index(static_cast<std::uint32_t>(i)));
    double y = rng.beta(a, b);
    y = std::min(std::max(y, 1e-300), 1.0 - 1e-16);
    out.y.push_back(y);
  }
}

std::vector<double> BetaQuantileModel::mle(const DataView& data) const { return mle_of(stats_of(data)); }

PosteriorFit BetaQuantileModel::fit(const DataView& data, const MCMCSettings& mcmc, const StreamKey& key) const {
  const BetaStats s = stats_of(data);
  std::vector<double> start = mle_of(s);
  McmcState init(2);
  init << std::clamp(std::log(start[0]), p_.log_alpha_min + 1e-9, p_.log_alpha_max - 1e-9),
      std::clamp(std::log(start[1]), p_.log_beta_min + 1e-9, p_.log_beta_max - 1e-9);
  McmcMatrix cov(2, 2);
  if (s.n >= 2.0) {
    const double a = std::exp(init(0)), b = std::exp(init(1));
    Eigen::Matrix2d nat = (s.n * fisher_unit(a, b)).inverse();
    cov << nat(0, 0) / (a * a), nat(0, 1) / (a * b), nat(1, 0) / (a * b), nat(1, 1) / (b * b);
  } else {
    cov << 1.0, 0.0, 0.0, 1.0;
  }
  BetaTarget target(s, p_);
  MetropolisOutput o = run_metropolis(target, init, cov, mcmc, key);
  PosteriorFit f;
  f.delta = std::move(o.delta);
  f.states = std::move(o.states);
  f.dim = 2;
  f.acceptance = o.acceptance;
  f.rhat = o.rhat;
  f.resolution = f.delta.size();
  f.degenerate = s.n < 2.0;
  return f;
}

double BetaQuantileModel::sigma_sq(const std::vector<double>& theta) const {
  const double a = theta.at(0), b = theta.at(1);
  const double ha = 1e-5 * a, hb = 1e-5 * b;
  Eigen::Vector2d g((beta_quantile(a + ha, b, p_.q) - beta_quantile(a - ha, b, p_.q)) / (2.0 * ha),
                    (beta_quantile(a, b + hb, p_.q) - beta_quantile(a, b - hb, p_.q)) / (2.0 * hb));
  const Eigen::Matrix2d inv = fisher_unit(a, b).inverse();
  return g.dot(inv * g);
}

std::vector<double> BetaQuantileModel::draw_theta(const PosteriorFit& fit, RngStream& rng) const {
  const std::size_t i = pick_draw(fit, rng);
  return {std::exp(fit.states[2 * i]), std::exp(fit.states[2 * i + 1])};
}

std::string BetaQuantileModel::describe() const {
  char buf[320];
  std::snprintf(buf, sizeof buf,
                "beta_quantile(q=%.17g, scenario_alpha=%.17g, log_alpha=[%.17g,%.17g], log_beta=[%.17g,%.17g])",
                p_.q, p_.scenario_alpha, p_.log_alpha_min, p_.log_alpha_max, p_.log_beta_min, p_.log_beta_max);
  return buf;
}

ModelPtr beta_quantile_model(BetaQuantileParams p) { return std::make_shared<BetaQuantileModel>(p); }

}  // namespace seqdesign
