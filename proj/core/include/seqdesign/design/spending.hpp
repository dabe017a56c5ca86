#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace seqdesign {

// Lan-DeMets spending function approximating O'Brien-Fleming boundaries:
// alpha(s) = 2 (1 - Phi(Phi^{-1}(1 - Gamma0/2) / sqrt(s))).
double obf_spending(double Gamma0, double s);

struct SpendingCalibration {
  std::size_t paths = 1000000;
  std::uint64_t seed = 20240917;
};

// Posterior-probability thresholds gamma_t = Phi(z_t) whose stage-wise crossing
// probabilities on the canonical joint normal match the spending increments at
// information fractions c_t / c_T. Returns the T-1 interim thresholds, or all T when
// include_final is set.
std::vector<double> obf_initial_gammas(double Gamma0, const std::vector<double>& c, bool include_final = false,
                                       const SpendingCalibration& cal = {});

}  // namespace seqdesign
