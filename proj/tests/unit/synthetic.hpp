#pragma once

#include <cmath>

#include "seqdesign/numeric.hpp"
#include "seqdesign/rng.hpp"
#include "seqdesign/summary.hpp"

namespace seqdesign::synth {

// Matrix whose stage logits follow a random walk, so stages are positively related.
inline SummaryMatrix random_matrix(std::size_t R, std::vector<double> c, long n, double drift, std::uint64_t seed,
                                   bool pred = false) {
  SummaryMatrix m;
  m.schedule = AnalysisSchedule(std::move(c), n);
  m.seed = seed;
  m.tau_draws = 100000;
  m.pred_draws = pred ? 1000 : 0;
  const std::size_t T = m.schedule.stages();
  StreamKey k;
  k.seed = seed;
  RngStream rng(k);
  for (std::size_t r = 0; r < R; ++r) {
    SummaryRow row;
    row.delta = rng.uniform();
    double l = drift + rng.normal();
    for (std::size_t t = 0; t < T; ++t) {
      row.tau.push_back(clamp_prob(expit(l), m.tau_draws));
      if (pred && t + 1 < T) row.tau_P.push_back(clamp_prob(expit(l + 0.5 * rng.normal()), 1000));
      l += drift + 0.7 * rng.normal();
    }
    m.rows.push_back(std::move(row));
  }
  return m;
}

}  // namespace seqdesign::synth
