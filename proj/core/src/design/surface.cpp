#include "seqdesign/design/surface.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "seqdesign/error.hpp"
#include "seqdesign/numeric.hpp"

namespace seqdesign {

std::vector<std::size_t> subgroup_split(const SummaryMatrix& m, std::size_t k) {
  const std::size_t R = m.replicates();
  if (k < 1) throw ConfigError("subgroup count must be >= 1");
  if (k > R) throw ConfigError("subgroup count exceeds the number of replicates");
  std::vector<std::size_t> idx(R);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t x, std::size_t y) { return m.rows[x].delta < m.rows[y].delta; });
  const std::size_t block = (R + k - 1) / k;
  std::vector<std::size_t> g(R);
  for (std::size_t pos = 0; pos < R; ++pos) g[idx[pos]] = pos / block;
  return g;
}

double LogitSurface::logit_at(std::size_t r, std::size_t s, double n) const {
  const std::size_t S = summaries();
  const double a = la[r * S + s], b = lb[r * S + s];
  const double na = static_cast<double>(n_a), nb = static_cast<double>(n_b);
  return a * ((n - nb) / (na - nb)) + b * ((n - na) / (nb - na));
}

double LogitSurface::slope(std::size_t r, std::size_t s) const {
  const std::size_t S = summaries();
  return (lb[r * S + s] - la[r * S + s]) / static_cast<double>(n_b - n_a);
}

namespace {

double summary_value(const SummaryRow& row, std::size_t s, std::size_t T) {
  return s < T ? row.tau[s] : row.tau_P[s - T];
}

// Members of each subgroup, ordered by delta (ties by replicate index).
std::vector<std::vector<std::size_t>> members(const std::vector<std::size_t>& g, std::size_t k) {
  std::vector<std::vector<std::size_t>> out(k);
  for (std::size_t r = 0; r < g.size(); ++r) out[g[r]].push_back(r);
  return out;
}

std::vector<std::size_t> order_by(const std::vector<std::size_t>& idx, const std::vector<double>& key) {
  std::vector<std::size_t> pos(idx.size());
  std::iota(pos.begin(), pos.end(), 0);
  std::stable_sort(pos.begin(), pos.end(), [&](std::size_t x, std::size_t y) { return key[x] < key[y]; });
  return pos;
}

}  // namespace

LogitSurface fit_logit_surface(const SummaryMatrix& a, const SummaryMatrix& b, std::size_t k, PairingMode mode) {
  const std::size_t R = a.replicates();
  if (b.replicates() != R) throw ConfigError("anchor matrices must have the same number of replicates");
  if (a.schedule.spacing() != b.schedule.spacing()) throw ConfigError("anchor matrices use different spacings");
  if (a.has_tau_P() != b.has_tau_P()) throw ConfigError("anchor matrices disagree on tau_P");
  if (a.schedule.n() == b.schedule.n()) throw ConfigError("anchor sample sizes must differ");
  if (R == 0) throw ConfigError("anchor matrices are empty");

  LogitSurface s;
  s.n_a = a.schedule.n();
  s.n_b = b.schedule.n();
  s.stages = a.stages();
  s.has_tau_P = a.has_tau_P();
  s.subgroup_count = k;
  s.mode = mode;
  s.subgroup = subgroup_split(a, k);
  const std::vector<std::size_t> gb = subgroup_split(b, k);
  s.delta.resize(R);
  for (std::size_t r = 0; r < R; ++r) s.delta[r] = a.rows[r].delta;
  const std::size_t T = s.stages;
  const std::size_t S = s.summaries();
  s.la.assign(R * S, 0.0);
  s.lb.assign(R * S, 0.0);
  // Logits of both anchors.
  std::vector<double> LA(R * S), LB(R * S);
  for (std::size_t r = 0; r < R; ++r)
    for (std::size_t j = 0; j < S; ++j) {
      LA[r * S + j] = logit(summary_value(a.rows[r], j, T));
      LB[r * S + j] = logit(summary_value(b.rows[r], j, T));
    }
  const auto ga_members = members(s.subgroup, k);
  const auto gb_members = members(gb, k);
  for (std::size_t g = 0; g < k; ++g) {
    const auto& ia = ga_members[g];
    const auto& ib = gb_members[g];
    if (ia.size() != ib.size()) throw ConfigError("anchor subgroups differ in size");
    const std::size_t K = ia.size();
    std::vector<double> ka(K), kb(K);
    if (mode == PairingMode::per_summary) {
      for (std::size_t j = 0; j < S; ++j) {
        for (std::size_t i = 0; i < K; ++i) {
          ka[i] = LA[ia[i] * S + j];
          kb[i] = LB[ib[i] * S + j];
        }
        const auto pa = order_by(ia, ka);
        std::vector<double> sorted_b(kb);
        std::sort(sorted_b.begin(), sorted_b.end());
        for (std::size_t rank = 0; rank < K; ++rank) {
          const std::size_t r = ia[pa[rank]];
          s.la[r * S + j] = LA[r * S + j];
          s.lb[r * S + j] = sorted_b[rank];
        }
      }
    } else {
      for (std::size_t i = 0; i < K; ++i) {
        ka[i] = LA[ia[i] * S];
        kb[i] = LB[ib[i] * S];
      }
      const auto pa = order_by(ia, ka);
      const auto pb = order_by(ib, kb);
      for (std::size_t rank = 0; rank < K; ++rank) {
        const std::size_t ra = ia[pa[rank]], rb = ib[pb[rank]];
        for (std::size_t j = 0; j < S; ++j) {
          s.la[ra * S + j] = LA[ra * S + j];
          s.lb[ra * S + j] = LB[rb * S + j];
        }
      }
    }
  }
  s.prototype.schedule = a.schedule;
  s.prototype.scenario = a.scenario;
  s.prototype.seed = a.seed;
  s.prototype.tau_draws = std::min(a.tau_draws, b.tau_draws);
  s.prototype.pred_draws = std::min(a.pred_draws, b.pred_draws);
  s.prototype.pred_gamma = a.pred_gamma;
  return s;
}

SummaryMatrix extrapolate_matrix(const LogitSurface& s, long n) {
  if (n < 1) throw ContractViolation("extrapolate_matrix: n must be >= 1");
  SummaryMatrix m;
  m.schedule = s.prototype.schedule.at(n);
  m.scenario = s.prototype.scenario;
  m.seed = s.prototype.seed;
  m.tau_draws = s.prototype.tau_draws;
  m.pred_draws = s.prototype.pred_draws;
  m.pred_gamma = s.prototype.pred_gamma;
  const std::size_t R = s.replicates(), T = s.stages;
  const std::size_t tau_res = std::max<std::size_t>(1, m.tau_draws);
  const std::size_t pred_res = std::max<std::size_t>(1, m.pred_draws);
  m.rows.resize(R);
  const double nd = static_cast<double>(n);
  for (std::size_t r = 0; r < R; ++r) {
    SummaryRow& row = m.rows[r];
    row.delta = s.delta[r];
    row.tau.resize(T);
    for (std::size_t t = 0; t < T; ++t) row.tau[t] = clamp_prob(expit(s.logit_at(r, t, nd)), tau_res);
    if (s.has_tau_P) {
      row.tau_P.resize(T - 1);
      for (std::size_t t = 0; t + 1 < T; ++t)
        row.tau_P[t] = clamp_prob(expit(s.logit_at(r, T + t, nd)), pred_res);
    }
  }
  return m;
}

bool outside_extrapolation_band(const LogitSurface& s, long n) {
  const double lo = 0.5 * static_cast<double>(std::min(s.n_a, s.n_b));
  const double hi = 2.0 * static_cast<double>(std::max(s.n_a, s.n_b));
  return static_cast<double>(n) < lo || static_cast<double>(n) > hi;
}

std::vector<PowerPoint> power_curve(const LogitSurface& s, const ThresholdSet& th, const StoppingPolicy& policy,
                                    long n_lo, long n_hi) {
  if (n_lo < 1 || n_hi < n_lo) throw ConfigError("power curve range is empty");
  std::vector<PowerPoint> out;
  for (long n = n_lo; n <= n_hi; ++n) out.push_back({n, nu_rate(extrapolate_matrix(s, n), th, policy)});
  return out;
}

MinNResult find_min_n(const LogitSurface& s, const ThresholdSet& th, const StoppingPolicy& policy, double Gamma1,
                      long n_lo, long n_hi) {
  if (n_lo < 1 || n_hi < n_lo) throw ConfigError("sample size search range is empty");
  MinNResult res;
  PowerPoint best{n_lo, -1.0};
  for (long n = n_lo; n <= n_hi; ++n) {
    const double p = nu_rate(extrapolate_matrix(s, n), th, policy);
    res.curve.push_back({n, p});
    if (p > best.power) best = {n, p};
    if (p >= Gamma1) {
      res.n = n;
      res.power = p;
      return res;
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "no n in [%ld, %ld] reaches power %.4g; best %.4g at n = %ld", n_lo, n_hi, Gamma1,
                best.power, best.n);
  throw NotFoundError(buf, best.n, best.power);
}

}  // namespace seqdesign
