#include "seqdesign/summary.hpp"

#include <string>

#include "seqdesign/error.hpp"
#include "seqdesign/numeric.hpp"

namespace seqdesign {

double SummaryMatrix::inner_value(std::size_t r, std::size_t t, std::size_t m) const {
  const std::size_t T = stages();
  return inner.at((r * (T - 1) + t) * pred_draws + m);
}

SummaryMatrix SummaryMatrix::with_pred_gamma(double gamma_T) const {
  SummaryMatrix out = *this;
  if (!has_inner() || gamma_T == pred_gamma) return out;
  const std::size_t T = stages();
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t t = 0; t + 1 < T; ++t) {
      const double* v = inner.data() + (r * (T - 1) + t) * pred_draws;
      std::size_t hits = 0;
      for (std::size_t m = 0; m < pred_draws; ++m) hits += v[m] >= gamma_T;
      out.rows[r].tau_P[t] =
          clamp_prob(static_cast<double>(hits) / static_cast<double>(pred_draws), pred_draws);
    }
  }
  out.pred_gamma = gamma_T;
  return out;
}

SummaryMatrix SummaryMatrix::subset(const std::vector<std::size_t>& idx) const {
  SummaryMatrix out;
  out.schedule = schedule;
  out.scenario = scenario;
  out.seed = seed;
  out.tau_draws = tau_draws;
  out.pred_draws = pred_draws;
  out.pred_gamma = pred_gamma;
  out.rows.reserve(idx.size());
  const std::size_t T = stages();
  const std::size_t block = T > 1 ? (T - 1) * pred_draws : 0;
  if (has_inner()) out.inner.reserve(idx.size() * block);
  for (std::size_t i : idx) {
    out.rows.push_back(rows.at(i));
    if (has_inner())
      out.inner.insert(out.inner.end(), inner.begin() + static_cast<long>(i * block),
                       inner.begin() + static_cast<long>((i + 1) * block));
  }
  return out;
}

void SummaryMatrix::validate() const {
  const std::size_t T = stages();
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.tau.size() != T)
      throw ContractViolation("summary row " + std::to_string(r) + " has wrong number of tau entries");
    if (!row.tau_P.empty() && row.tau_P.size() + 1 != T)
      throw ContractViolation("summary row " + std::to_string(r) + " has wrong number of tau_P entries");
    if (row.tau_P.empty() != rows.front().tau_P.empty())
      throw ContractViolation("tau_P must be present for all rows or none");
  }
  if (has_inner() && inner.size() != rows.size() * (T - 1) * pred_draws)
    throw ContractViolation("inner storage size does not match R * (T-1) * M");
}

}  // namespace seqdesign
