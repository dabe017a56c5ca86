#pragma once

#include <cstdint>
#include <ostream>
#include <string>

#include "seqdesign/design/bootstrap.hpp"
#include "seqdesign/design/stopping.hpp"
#include "seqdesign/summary.hpp"

namespace seqdesign::cli {

// A matrix artifact is PREFIX.csv with a PREFIX.json sidecar and, when tau_P was
// computed, PREFIX.inner.bin holding the inner final-analysis probabilities.
void save_matrix(const SummaryMatrix& m, const std::string& prefix, const std::string& model_description);
SummaryMatrix load_matrix(const std::string& prefix);
bool matrix_exists(const std::string& prefix);

// Seed of the simulation of one scenario at stage-1 size n.
std::uint64_t simulation_seed(std::uint64_t base, ScenarioLabel label, long n);

void write_oc_csv(std::ostream& os, const OCReport& oc, const std::vector<long>& stage_sizes, bool header = true);
void write_bands_csv(std::ostream& os, const std::vector<BandRow>& bands);

std::uint64_t fnv1a(const std::string& s);

}  // namespace seqdesign::cli
