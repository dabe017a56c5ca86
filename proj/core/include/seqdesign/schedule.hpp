#pragma once

#include <cstddef>
#include <vector>

namespace seqdesign {

// Spacing constants c_1 = 1 < c_2 < ... < c_T and the stage-1 sample size n.
class AnalysisSchedule {
 public:
  explicit AnalysisSchedule(std::vector<double> c, long n = 1);

  const std::vector<double>& spacing() const noexcept { return c_; }
  double c(std::size_t t) const { return c_.at(t); }
  std::size_t stages() const noexcept { return c_.size(); }
  long n() const noexcept { return n_; }
  AnalysisSchedule at(long n) const { return AnalysisSchedule(c_, n); }
  // Per-stage sample sizes ceil(c_t n).
  std::vector<long> sizes() const;
  long final_size() const;
  // Restrict to the first T stages.
  AnalysisSchedule truncated(std::size_t T) const;

 private:
  std::vector<double> c_;
  long n_;
};

std::vector<long> stage_sizes(const AnalysisSchedule& schedule, long n);

}  // namespace seqdesign
