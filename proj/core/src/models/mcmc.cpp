#include "seqdesign/models/mcmc.hpp"

#include <cmath>

#include <Eigen/Cholesky>

#include "seqdesign/error.hpp"

namespace seqdesign {

void MCMCSettings::validate() const {
  if (burnin < 0) throw ConfigError("mcmc burnin must be >= 0");
  if (retained < 100) throw ConfigError("mcmc retained must be >= 100");
  if (chains < 1) throw ConfigError("mcmc chains must be >= 1");
  if (!(target_acceptance > 0.0 && target_acceptance < 1.0))
    throw ConfigError("mcmc target_acceptance must lie in (0,1)");
}

namespace {

constexpr int kBatch = 50;

bool cholesky(const McmcMatrix& cov, McmcMatrix& L) {
  Eigen::LLT<McmcMatrix> llt(cov);
  if (llt.info() != Eigen::Success) return false;
  L = llt.matrixL();
  return L.allFinite();
}

}  // namespace

MetropolisOutput run_metropolis(MetropolisTarget& target, const McmcState& init,
                                const McmcMatrix& proposal_cov, const MCMCSettings& s,
                                const StreamKey& key) {
  const auto d = init.size();
  McmcMatrix L0;
  if (!cholesky(proposal_cov, L0)) {
    L0 = McmcMatrix::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) L0(i, i) = std::sqrt(std::fabs(proposal_cov(i, i)) + 1e-12);
  }
  const double base_scale = 2.38 / std::sqrt(static_cast<double>(d));

  MetropolisOutput out;
  out.dim = static_cast<std::size_t>(d);
  const std::size_t total = static_cast<std::size_t>(s.retained) * static_cast<std::size_t>(s.chains);
  out.delta.reserve(total);
  out.states.reserve(total * out.dim);
  std::size_t accepted_after = 0;

  for (int c = 0; c < s.chains; ++c) {
    RngStream rng(key.with_index(static_cast<std::uint32_t>(c)));
    McmcMatrix L = L0;
    double log_scale = std::log(base_scale);
    McmcState x = init;
    double lp = target.log_density(x);
    if (!std::isfinite(lp)) throw NumericError("Metropolis start has zero posterior density");

    const int warm_lo = s.burnin / 4;
    const int warm_hi = s.burnin / 2;
    McmcState sum = McmcState::Zero(d);
    McmcMatrix outer = McmcMatrix::Zero(d, d);
    int n_warm = 0;
    int batch_acc = 0;
    int batch_index = 0;

    bool moved = true;
    double last_delta = 0.0;
    McmcState z(d);
    McmcState y(d);
    const int iters = s.burnin + s.retained;
    for (int it = 0; it < iters; ++it) {
      for (Eigen::Index i = 0; i < d; ++i) z(i) = rng.normal();
      y = x + std::exp(log_scale) * (L * z);
      const double lpy = target.log_density(y);
      const double u = rng.uniform();
      const bool accept = std::isfinite(lpy) && std::log(u) < lpy - lp;
      if (accept) {
        x = y;
        lp = lpy;
        moved = true;
      }
      if (it < s.burnin) {
        if (!s.adaptation) continue;
        batch_acc += accept;
        if ((it + 1) % kBatch == 0) {
          ++batch_index;
          const double rate = static_cast<double>(batch_acc) / kBatch;
          const double gain = std::min(1.0, 3.0 / std::sqrt(static_cast<double>(batch_index)));
          log_scale += gain * (rate - s.target_acceptance) * 2.0;
          batch_acc = 0;
        }
        if (it >= warm_lo && it < warm_hi) {
          sum += x;
          outer += x * x.transpose();
          ++n_warm;
        }
        if (it + 1 == warm_hi && n_warm >= 20 * d) {
          const McmcState m = sum / n_warm;
          McmcMatrix cov = (outer - n_warm * m * m.transpose()) / (n_warm - 1);
          McmcMatrix Lc;
          if (cholesky(cov, Lc) && cov.diagonal().minCoeff() > 0.0) {
            L = Lc;
            log_scale = std::log(base_scale);
          }
        }
        continue;
      }
      accepted_after += accept;
      if (moved) {
        last_delta = target.delta(x);
        moved = false;
      }
      out.delta.push_back(last_delta);
      for (Eigen::Index i = 0; i < d; ++i) out.states.push_back(x(i));
    }
  }
  out.acceptance = static_cast<double>(accepted_after) / static_cast<double>(total);
  out.rhat = s.chains > 1 ? potential_scale_reduction(out.delta, static_cast<std::size_t>(s.chains)) : 0.0;
  return out;
}

double potential_scale_reduction(const std::vector<double>& draws, std::size_t chains) {
  if (chains < 2 || draws.size() < 2 * chains) return 0.0;
  const std::size_t n = draws.size() / chains;
  std::vector<double> means(chains), vars(chains);
  double grand = 0.0;
  for (std::size_t c = 0; c < chains; ++c) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m += draws[c * n + i];
    m /= static_cast<double>(n);
    double v = 0.0;
    for (std::size_t i = 0; i < n; ++i) v += (draws[c * n + i] - m) * (draws[c * n + i] - m);
    means[c] = m;
    vars[c] = v / static_cast<double>(n - 1);
    grand += m;
  }
  grand /= static_cast<double>(chains);
  double B = 0.0, W = 0.0;
  for (std::size_t c = 0; c < chains; ++c) {
    B += (means[c] - grand) * (means[c] - grand);
    W += vars[c];
  }
  B *= static_cast<double>(n) / static_cast<double>(chains - 1);
  W /= static_cast<double>(chains);
  if (!(W > 0.0)) return 1.0;
  const double var_plus = (static_cast<double>(n - 1) / static_cast<double>(n)) * W + B / static_cast<double>(n);
  return std::sqrt(var_plus / W);
}

}  // namespace seqdesign
