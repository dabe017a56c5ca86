#include "seqdesign/schedule.hpp"

#include <cmath>

#include "seqdesign/error.hpp"
#include "seqdesign/numeric.hpp"

namespace seqdesign {

AnalysisSchedule::AnalysisSchedule(std::vector<double> c, long n) : c_(std::move(c)), n_(n) {
  if (c_.empty()) throw ConfigError("schedule needs at least one analysis");
  if (c_.front() != 1.0) throw ConfigError("schedule requires c_1 = 1");
  for (std::size_t t = 1; t < c_.size(); ++t)
    if (!(c_[t] > c_[t - 1]) || !std::isfinite(c_[t]))
      throw ConfigError("schedule spacing constants must be finite and strictly increasing");
  if (n_ < 1) throw ConfigError("stage-1 sample size must be >= 1");
}

std::vector<long> AnalysisSchedule::sizes() const { return stage_sizes(*this, n_); }

long AnalysisSchedule::final_size() const {
  return ceil_tolerant(c_.back() * static_cast<double>(n_));
}

AnalysisSchedule AnalysisSchedule::truncated(std::size_t T) const {
  if (T < 1 || T > c_.size()) throw ConfigError("cannot truncate schedule to that many stages");
  return AnalysisSchedule(std::vector<double>(c_.begin(), c_.begin() + static_cast<long>(T)), n_);
}

std::vector<long> stage_sizes(const AnalysisSchedule& schedule, long n) {
  if (n < 1) throw ContractViolation("stage_sizes: n must be >= 1");
  std::vector<long> out;
  out.reserve(schedule.stages());
  for (double c : schedule.spacing()) out.push_back(ceil_tolerant(c * static_cast<double>(n)));
  return out;
}

}  // namespace seqdesign
