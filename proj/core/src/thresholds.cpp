#include "seqdesign/thresholds.hpp"

#include <string>

#include "seqdesign/error.hpp"

namespace seqdesign {

namespace {

void check_range(const std::vector<double>& v, const char* name) {
  for (double x : v)
    if (!(x >= 0.0 && x <= 1.0))
      throw ConfigError(std::string("threshold ") + name + " has an entry outside [0,1]");
}

void check_len(const std::vector<double>& v, std::size_t len, const char* name) {
  if (v.size() != len)
    throw ConfigError(std::string("threshold ") + name + " must have " + std::to_string(len) +
                      " entries, has " + std::to_string(v.size()));
}

}  // namespace

void ThresholdSet::validate(std::size_t T) const {
  check_len(gamma, T, "gamma");
  check_range(gamma, "gamma");
  if (xi) {
    check_len(*xi, T, "xi");
    check_range(*xi, "xi");
    for (std::size_t t = 0; t < T; ++t)
      if (!((*xi)[t] < gamma[t])) throw ConfigError("xi_t must be below gamma_t");
  }
  if (eta) {
    check_len(*eta, T - 1, "eta");
    check_range(*eta, "eta");
  }
  if (rho) {
    check_len(*rho, T - 1, "rho");
    check_range(*rho, "rho");
  }
  if (eta && rho)
    for (std::size_t t = 0; t + 1 < T; ++t)
      if (!((*rho)[t] < (*eta)[t])) throw ConfigError("rho_t must be below eta_t");
}

ThresholdSet ThresholdSet::with_gamma(std::vector<double> g) const {
  ThresholdSet out = *this;
  out.gamma = std::move(g);
  return out;
}

}  // namespace seqdesign
