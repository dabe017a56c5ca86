#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "seqdesign/summary.hpp"

namespace seqdesign {

// CSV with header replicate,delta_r,tau_1..tau_T[,tauP_1..tauP_{T-1}], 17 significant digits.
void write_matrix_csv(const SummaryMatrix& m, std::ostream& os);
void write_matrix_csv(const SummaryMatrix& m, const std::string& path);

// Reads rows back into m (schedule, scenario and seed are left to the caller).
// Throws ConfigError when the column layout does not match stages.
std::vector<SummaryRow> read_matrix_csv(std::istream& is, std::size_t stages);
std::vector<SummaryRow> read_matrix_csv(const std::string& path, std::size_t stages);

// Inner final-analysis probabilities as raw little-endian doubles.
void write_inner_bin(const SummaryMatrix& m, const std::string& path);
std::vector<double> read_inner_bin(const std::string& path);

std::string format_double(double v);

}  // namespace seqdesign
