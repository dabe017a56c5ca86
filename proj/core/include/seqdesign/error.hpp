#pragma once

#include <stdexcept>
#include <string>

namespace seqdesign {

// Exit codes used by the command-line front end.
enum class ExitCode : int { ok = 0, usage = 1, config = 2, infeasible = 3, runtime = 4 };

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what, ExitCode code = ExitCode::runtime)
      : std::runtime_error(what), code_(code) {}
  ExitCode code() const noexcept { return code_; }

 private:
  ExitCode code_;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(what, ExitCode::config) {}
};

class ContractViolation : public Error {
 public:
  explicit ContractViolation(const std::string& what) : Error(what, ExitCode::runtime) {}
};

class NumericError : public Error {
 public:
  explicit NumericError(const std::string& what) : Error(what, ExitCode::runtime) {}
};

class InsufficientSampleError : public Error {
 public:
  explicit InsufficientSampleError(const std::string& what) : Error(what, ExitCode::runtime) {}
};

class StageIndexError : public Error {
 public:
  explicit StageIndexError(const std::string& what) : Error(what, ExitCode::runtime) {}
};

class MissingSummaryError : public Error {
 public:
  explicit MissingSummaryError(const std::string& what) : Error(what, ExitCode::config) {}
};

class MissingReferenceError : public Error {
 public:
  explicit MissingReferenceError(const std::string& what) : Error(what, ExitCode::config) {}
};

// Raised when no threshold choice can meet the type I bound. stage is 1-based.
class InfeasibleError : public Error {
 public:
  InfeasibleError(const std::string& what, int stage)
      : Error(what, ExitCode::infeasible), stage_(stage) {}
  int stage() const noexcept { return stage_; }

 private:
  int stage_;
};

class NotFoundError : public Error {
 public:
  NotFoundError(const std::string& what, long best_n, double best_power)
      : Error(what, ExitCode::infeasible), best_n_(best_n), best_power_(best_power) {}
  long best_n() const noexcept { return best_n_; }
  double best_power() const noexcept { return best_power_; }

 private:
  long best_n_;
  double best_power_;
};

class ReplicateError : public Error {
 public:
  ReplicateError(const std::string& what, std::size_t replicate)
      : Error(what, ExitCode::runtime), replicate_(replicate) {}
  std::size_t replicate() const noexcept { return replicate_; }

 private:
  std::size_t replicate_;
};

}  // namespace seqdesign
