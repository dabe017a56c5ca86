#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace seqdesign {

// gamma: posterior success (length T). xi: posterior failure (length T).
// eta / rho: predictive success / failure (length T-1).
struct ThresholdSet {
  std::vector<double> gamma;
  std::optional<std::vector<double>> xi;
  std::optional<std::vector<double>> eta;
  std::optional<std::vector<double>> rho;

  // Throws ConfigError when lengths or orderings are inconsistent with T stages.
  void validate(std::size_t T) const;
  ThresholdSet with_gamma(std::vector<double> g) const;
};

}  // namespace seqdesign
