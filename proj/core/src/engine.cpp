#include "seqdesign/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <string>
#include <thread>

#include "seqdesign/error.hpp"
#include "seqdesign/models/predictive.hpp"
#include "seqdesign/numeric.hpp"

namespace seqdesign {

void RunPlan::validate() const {
  if (!model) throw ConfigError("run plan has no model");
  scenario.validate();
  mcmc.validate();
  if (replicates < 1) throw ConfigError("run plan needs at least one replicate");
  if (replicates > 0xFFFFFFFFull) throw ConfigError("too many replicates for the stream layout");
  if (schedule.stages() > 255) throw ConfigError("at most 255 analyses are supported");
  if (compute_tau_P) {
    if (schedule.stages() < 2) throw ConfigError("tau_P needs at least two analyses");
    if (!(gamma_T_for_pred > 0.0 && gamma_T_for_pred <= 1.0))
      throw ConfigError("tau_P needs gamma_T in (0,1]");
    if (inner_replicates < 1 || inner_replicates > 65535) throw ConfigError("M must lie in [1, 65535]");
    inner_mcmc.validate();
  }
}

namespace {

SummaryRow replicate_impl(const RunPlan& plan, std::size_t r, std::vector<double>* inner,
                          std::size_t* resolution) {
  const Model& model = *plan.model;
  StreamKey key;
  key.seed = plan.base_seed;
  key.replicate = static_cast<std::uint32_t>(r);

  SummaryRow row;
  RngStream theta_rng(key.with_lane(Lane::theta));
  row.delta = plan.scenario.sampler.draw(theta_rng);
  row.theta = model.theta_for_delta(row.delta);

  const std::vector<long> sizes = plan.schedule.sizes();
  const std::size_t T = sizes.size();
  DataBlock data;
  model.generate(row.theta, key.with_lane(Lane::data), 0, static_cast<std::size_t>(sizes.back()), data);

  row.tau.resize(T);
  if (plan.compute_tau_P) row.tau_P.resize(T - 1);
  for (std::size_t t = 0; t < T; ++t) {
    const DataView view(data, static_cast<std::size_t>(sizes[t]));
    const PosteriorFit fit =
        model.fit(view, plan.mcmc, key.with_lane(Lane::posterior).with_stage(static_cast<std::uint8_t>(t)));
    row.tau[t] = model.posterior_prob(fit, plan.hyp, plan.bandwidth);
    if (resolution) *resolution = fit.resolution;
    if (plan.compute_tau_P && t + 1 < T) {
      PredictiveResult pr = predictive_prob(model, view, fit, plan.schedule, t, plan.hyp, plan.gamma_T_for_pred,
                                            plan.inner_replicates, plan.inner_mcmc, key, plan.bandwidth);
      row.tau_P[t] = pr.prob;
      if (inner) inner->insert(inner->end(), pr.inner.begin(), pr.inner.end());
    }
  }
  return row;
}

}  // namespace

SummaryRow simulate_replicate(const RunPlan& plan, std::size_t r, std::vector<double>* inner) {
  return replicate_impl(plan, r, inner, nullptr);
}

SummaryMatrix simulate_summary_matrix(const RunPlan& plan, unsigned workers, const ProgressFn& progress) {
  plan.validate();
  const std::size_t R = plan.replicates;
  const std::size_t T = plan.schedule.stages();
  const bool keep_inner = plan.compute_tau_P && plan.store_inner;
  const std::size_t block = keep_inner ? (T - 1) * plan.inner_replicates : 0;

  SummaryMatrix m;
  m.rows.resize(R);
  m.schedule = plan.schedule;
  m.scenario = plan.scenario;
  m.seed = plan.base_seed;
  m.tau_draws = 0;
  if (plan.compute_tau_P) {
    m.pred_draws = plan.inner_replicates;
    m.pred_gamma = plan.gamma_T_for_pred;
  }
  if (keep_inner) m.inner.assign(R * block, 0.0);

  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::atomic<bool> abort{false};
  std::mutex err_mu;
  std::size_t err_index = R;
  std::string err_what;
  std::mutex progress_mu;

  auto work = [&] {
    std::vector<double> inner;
    for (;;) {
      if (abort.load(std::memory_order_relaxed)) return;
      const std::size_t r = next.fetch_add(1);
      if (r >= R) return;
      try {
        inner.clear();
        std::size_t res = 0;
        m.rows[r] = replicate_impl(plan, r, keep_inner ? &inner : nullptr, &res);
        if (r == 0) m.tau_draws = res;
        if (keep_inner) std::copy(inner.begin(), inner.end(), m.inner.begin() + static_cast<long>(r * block));
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (r < err_index) {
          err_index = r;
          err_what = e.what();
        }
        abort = true;
        return;
      }
      const std::size_t d = done.fetch_add(1) + 1;
      if (progress) {
        std::lock_guard<std::mutex> lock(progress_mu);
        progress(d, R);
      }
    }
  };

  workers = std::max(1u, workers);
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (err_index < R)
    throw ReplicateError("replicate " + std::to_string(err_index) + " failed: " + err_what, err_index);

  return m;
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) return NAN;
  auto ranks = [n](const std::vector<double>& v) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> rk(n);
    std::size_t i = 0;
    while (i < n) {
      std::size_t j = i;
      while (j + 1 < n && v[idx[j + 1]] == v[idx[i]]) ++j;
      const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
      for (std::size_t k = i; k <= j; ++k) rk[idx[k]] = avg;
      i = j + 1;
    }
    return rk;
  };
  const std::vector<double> rx = ranks(x), ry = ranks(y);
  const double mean = 0.5 * static_cast<double>(n + 1);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (rx[i] - mean) * (ry[i] - mean);
    sxx += (rx[i] - mean) * (rx[i] - mean);
    syy += (ry[i] - mean) * (ry[i] - mean);
  }
  if (sxx == 0.0 || syy == 0.0) return NAN;
  return sxy / std::sqrt(sxx * syy);
}

CouplingReport monotone_coupling_check(const SummaryMatrix& matrix, double pred_threshold) {
  const std::size_t T = matrix.stages();
  if (T < 2) throw ContractViolation("monotone_coupling_check needs at least two analyses");
  const std::size_t R = matrix.replicates();
  CouplingReport rep;
  for (std::size_t t = 0; t + 1 < T; ++t) {
    std::vector<double> a(R), b(R);
    for (std::size_t r = 0; r < R; ++r) {
      a[r] = matrix.rows[r].tau[t];
      b[r] = matrix.rows[r].tau[t + 1];
    }
    rep.rank_correlation.push_back(R < 2 ? NAN : spearman(a, b));
    if (!matrix.has_tau_P() || R == 0) {
      rep.agreement.push_back(NAN);
      continue;
    }
    std::size_t agree = 0;
    for (const auto& row : matrix.rows)
      agree += (row.tau_P[t] >= pred_threshold) == (row.tau[T - 1] >= matrix.pred_gamma);
    rep.agreement.push_back(static_cast<double>(agree) / static_cast<double>(R));
  }
  return rep;
}

}  // namespace seqdesign
