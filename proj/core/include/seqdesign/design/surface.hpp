#pragma once

#include <cstddef>
#include <vector>

#include "seqdesign/design/stopping.hpp"
#include "seqdesign/summary.hpp"

namespace seqdesign {

// Replicates sorted by delta_r (ties by index) and cut into contiguous blocks of
// ceil(R/k); returns the block of each replicate.
std::vector<std::size_t> subgroup_split(const SummaryMatrix& matrix, std::size_t k);

enum class PairingMode {
  per_summary,  // each summary paired by its own rank; slots follow the anchor-a replicate
  stage1_rank,  // whole rows paired by the rank of the stage-1 logit
};

// Per-replicate lines through the anchor logits of every summary (tau_1..tau_T then
// tau_P,1..tau_P,T-1). Row r follows replicate r of the n_a matrix.
struct LogitSurface {
  long n_a = 0;
  long n_b = 0;
  std::size_t stages = 0;
  bool has_tau_P = false;
  std::size_t subgroup_count = 1;
  PairingMode mode = PairingMode::per_summary;
  std::vector<std::size_t> subgroup;  // per replicate
  std::vector<double> delta;          // per replicate, from the n_a matrix
  std::vector<double> la;             // R x S logits at n_a
  std::vector<double> lb;             // R x S paired logits at n_b
  SummaryMatrix prototype;            // metadata carried into extrapolated matrices

  std::size_t replicates() const noexcept { return delta.size(); }
  std::size_t summaries() const noexcept { return stages + (has_tau_P ? stages - 1 : 0); }
  // Logit of summary s for slot r at n, written so both anchors are reproduced exactly.
  double logit_at(std::size_t r, std::size_t s, double n) const;
  double slope(std::size_t r, std::size_t s) const;
};

LogitSurface fit_logit_surface(const SummaryMatrix& a, const SummaryMatrix& b, std::size_t subgroups = 1,
                               PairingMode mode = PairingMode::per_summary);

// Synthetic summary matrix at n from the expits of the extrapolated logits.
SummaryMatrix extrapolate_matrix(const LogitSurface& surface, long n);

// True when n lies outside [0.5 min(n_a, n_b), 2 max(n_a, n_b)].
bool outside_extrapolation_band(const LogitSurface& surface, long n);

struct PowerPoint {
  long n;
  double power;
};

struct MinNResult {
  long n = 0;
  double power = 0.0;
  std::vector<PowerPoint> curve;  // every scanned n up to the answer
};

std::vector<PowerPoint> power_curve(const LogitSurface& surface, const ThresholdSet& th,
                                    const StoppingPolicy& policy, long n_lo, long n_hi);

// First n in [n_lo, n_hi] with extrapolated nu-rate >= Gamma1. Throws NotFoundError.
MinNResult find_min_n(const LogitSurface& surface, const ThresholdSet& th, const StoppingPolicy& policy,
                      double Gamma1, long n_lo, long n_hi);

}  // namespace seqdesign
