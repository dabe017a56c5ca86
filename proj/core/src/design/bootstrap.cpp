#include "seqdesign/design/bootstrap.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "seqdesign/error.hpp"
#include "seqdesign/rng.hpp"

namespace seqdesign {

namespace {

// Flattened per-n values: success stages, failure stages, nu.
std::vector<double> grid_values(const LogitSurface& s, const ThresholdSet& th, const StoppingPolicy& policy,
                                const std::vector<long>& grid, std::size_t& ns, std::size_t& nf) {
  std::vector<double> out;
  for (long n : grid) {
    const OCReport oc = operating_characteristics(extrapolate_matrix(s, n), th, policy);
    ns = oc.cum_success.size();
    nf = oc.cum_failure.size();
    out.insert(out.end(), oc.cum_success.begin(), oc.cum_success.end());
    out.insert(out.end(), oc.cum_failure.begin(), oc.cum_failure.end());
    out.push_back(oc.nu_rate);
  }
  return out;
}

double type7(std::vector<double>& v, double p) {
  std::sort(v.begin(), v.end());
  const double h = (static_cast<double>(v.size()) - 1.0) * p;
  const std::size_t lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

}  // namespace

std::vector<BandRow> bootstrap_bands(const SummaryMatrix& a, const SummaryMatrix& b, const ThresholdSet& th,
                                     const StoppingPolicy& policy, const std::vector<long>& n_grid,
                                     const BootstrapSettings& st) {
  if (st.B < 100) throw ConfigError("bootstrap needs at least 100 resamples");
  if (!(st.level > 0.0 && st.level < 1.0)) throw ConfigError("bootstrap level must lie in (0, 1)");
  if (n_grid.empty()) throw ConfigError("bootstrap grid is empty");
  const std::size_t R = a.replicates();

  std::size_t ns = 0, nf = 0;
  const LogitSurface base = fit_logit_surface(a, b, st.subgroups, st.mode);
  const std::vector<double> point = grid_values(base, th, policy, n_grid, ns, nf);
  const std::size_t V = point.size();

  std::vector<double> draws(st.B * V);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex mu;
  auto work = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= st.B) return;
      try {
        StreamKey key;
        key.seed = st.seed;
        key.lane = Lane::bootstrap;
        key.replicate = static_cast<std::uint32_t>(k);
        RngStream rng(key);
        std::vector<std::size_t> idx(R);
        for (auto& i : idx) i = static_cast<std::size_t>(rng.below(R));
        const LogitSurface s = fit_logit_surface(a.subset(idx), b.subset(idx), st.subgroups, st.mode);
        std::size_t ns2 = 0, nf2 = 0;
        const std::vector<double> v = grid_values(s, th, policy, n_grid, ns2, nf2);
        std::copy(v.begin(), v.end(), draws.begin() + static_cast<std::ptrdiff_t>(k * V));
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!failure) failure = std::current_exception();
        next.store(st.B);
        return;
      }
    }
  };
  const unsigned W = std::max(1u, std::min<unsigned>(st.workers, static_cast<unsigned>(st.B)));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < W; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  const double alpha = 1.0 - st.level;
  std::vector<Band> bands(V);
  std::vector<double> col(st.B);
  for (std::size_t j = 0; j < V; ++j) {
    for (std::size_t k = 0; k < st.B; ++k) col[k] = draws[k * V + j];
    Band& band = bands[j];
    band.estimate = point[j];
    band.lo = std::min(type7(col, 0.5 * alpha), point[j]);
    band.hi = std::max(type7(col, 1.0 - 0.5 * alpha), point[j]);
  }
  std::vector<BandRow> out;
  const std::size_t per = ns + nf + 1;
  for (std::size_t g = 0; g < n_grid.size(); ++g) {
    BandRow row;
    row.n = n_grid[g];
    const std::size_t o = g * per;
    row.success.assign(bands.begin() + static_cast<std::ptrdiff_t>(o),
                       bands.begin() + static_cast<std::ptrdiff_t>(o + ns));
    row.failure.assign(bands.begin() + static_cast<std::ptrdiff_t>(o + ns),
                       bands.begin() + static_cast<std::ptrdiff_t>(o + ns + nf));
    row.nu = bands[o + ns + nf];
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace seqdesign
