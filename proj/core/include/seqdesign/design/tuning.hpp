#pragma once

#include <string>
#include <vector>

#include "seqdesign/design/stopping.hpp"

namespace seqdesign {

struct TuneResult {
  ThresholdSet thresholds;
  double achieved_rate = 0.0;
  double kappa = 1.0;               // proportional recipe only
  std::vector<std::string> audit;   // one line per evaluated candidate
};

// Null nu-rate with tau_P refreshed from the matrix's inner storage for gamma_T when
// the policy consults predictive probabilities.
double null_rate(const SummaryMatrix& null_matrix, const ThresholdSet& th, const StoppingPolicy& policy);

// Smallest gamma_T in {observed tau_T} u {1} with null nu-rate <= Gamma0, other
// thresholds fixed. Throws InfeasibleError naming the first stage whose cumulative
// success already exceeds Gamma0 at gamma_T = 1.
TuneResult tune_final_gamma(const SummaryMatrix& null_matrix, const ThresholdSet& thresholds,
                            const StoppingPolicy& policy, double Gamma0);

// Scales every gamma_t toward 1 as gamma'_t = 1 - kappa (1 - gamma_t) and returns the
// least conservative kappa in [0, 1] (bisection, tolerance 1e-6) with null nu-rate <= Gamma0.
TuneResult tune_proportional(const SummaryMatrix& null_matrix, const ThresholdSet& initial,
                             const StoppingPolicy& policy, double Gamma0, double tolerance = 1e-6);

}  // namespace seqdesign
