#pragma once

#include <cstdint>
#include <vector>

#include "seqdesign/design/stopping.hpp"
#include "seqdesign/design/surface.hpp"
#include "seqdesign/summary.hpp"

namespace seqdesign {

struct BootstrapSettings {
  std::size_t B = 1000;
  double level = 0.95;
  std::size_t subgroups = 1;
  PairingMode mode = PairingMode::per_summary;
  std::uint64_t seed = 0;
  unsigned workers = 1;
};

struct Band {
  double estimate = 0.0;
  double lo = 0.0;
  double hi = 0.0;
};

// One grid point: per-stage cumulative success/failure bands plus the nu-rate band.
struct BandRow {
  long n = 0;
  std::vector<Band> success;
  std::vector<Band> failure;
  Band nu;
};

// Resamples replicate slots (both anchors together) and refits the surface for each resample.
std::vector<BandRow> bootstrap_bands(const SummaryMatrix& a, const SummaryMatrix& b, const ThresholdSet& th,
                                     const StoppingPolicy& policy, const std::vector<long>& n_grid,
                                     const BootstrapSettings& settings);

}  // namespace seqdesign
