#pragma once

#include <string>

namespace seqdesign {

enum class HypothesisShape { one_sided_lower, one_sided_upper, two_sided };

// H1: delta in (lower, upper). Either endpoint may be infinite, not both.
class Hypothesis {
 public:
  Hypothesis(double lower, double upper);

  double lower() const noexcept { return lower_; }
  double upper() const noexcept { return upper_; }
  HypothesisShape shape() const noexcept;
  bool contains(double delta) const noexcept { return delta > lower_ && delta < upper_; }
  std::string to_string() const;

 private:
  double lower_;
  double upper_;
};

const char* shape_name(HypothesisShape s);

}  // namespace seqdesign
