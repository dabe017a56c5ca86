#include "seqdesign/matrix_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "seqdesign/error.hpp"

namespace seqdesign {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_matrix_csv(const SummaryMatrix& m, std::ostream& os) {
  const std::size_t T = m.stages();
  const bool pred = m.has_tau_P();
  os << "replicate,delta_r";
  for (std::size_t t = 1; t <= T; ++t) os << ",tau_" << t;
  if (pred)
    for (std::size_t t = 1; t < T; ++t) os << ",tauP_" << t;
  os << '\n';
  for (std::size_t r = 0; r < m.rows.size(); ++r) {
    const SummaryRow& row = m.rows[r];
    os << r << ',' << format_double(row.delta);
    for (double v : row.tau) os << ',' << format_double(v);
    for (double v : row.tau_P) os << ',' << format_double(v);
    os << '\n';
  }
}

void write_matrix_csv(const SummaryMatrix& m, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot open " + path + " for writing");
  write_matrix_csv(m, os);
  if (!os) throw Error("failed writing " + path);
}

std::vector<SummaryRow> read_matrix_csv(std::istream& is, std::size_t T) {
  std::string line;
  if (!std::getline(is, line)) throw ConfigError("matrix CSV is empty");
  std::size_t cols = 1;
  for (char c : line) cols += c == ',';
  const bool pred = cols == 2 + T + (T - 1) && T > 1;
  if (!pred && cols != 2 + T)
    throw ConfigError("matrix CSV has " + std::to_string(cols) + " columns, expected " + std::to_string(2 + T) +
                      (T > 1 ? " or " + std::to_string(1 + 2 * T) : std::string()));
  std::vector<SummaryRow> rows;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<double> v;
    v.reserve(cols);
    const char* p = line.c_str();
    while (*p) {
      char* end = nullptr;
      v.push_back(std::strtod(p, &end));
      if (end == p) throw ConfigError("matrix CSV line " + std::to_string(lineno) + ": bad number");
      p = end;
      if (*p == ',') ++p;
    }
    if (v.size() != cols) throw ConfigError("matrix CSV line " + std::to_string(lineno) + ": wrong column count");
    SummaryRow row;
    row.delta = v[1];
    row.tau.assign(v.begin() + 2, v.begin() + 2 + static_cast<long>(T));
    if (pred) row.tau_P.assign(v.begin() + 2 + static_cast<long>(T), v.end());
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<SummaryRow> read_matrix_csv(const std::string& path, std::size_t T) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ConfigError("cannot open matrix " + path);
  return read_matrix_csv(is, T);
}

void write_inner_bin(const SummaryMatrix& m, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot open " + path + " for writing");
  os.write(reinterpret_cast<const char*>(m.inner.data()), static_cast<std::streamsize>(m.inner.size() * sizeof(double)));
  if (!os) throw Error("failed writing " + path);
}

std::vector<double> read_inner_bin(const std::string& path) {
  std::ifstream is(path, std::ios::binary | std::ios::ate);
  if (!is) throw ConfigError("cannot open " + path);
  const auto bytes = static_cast<std::size_t>(is.tellg());
  if (bytes % sizeof(double)) throw ConfigError(path + " is not a whole number of doubles");
  std::vector<double> v(bytes / sizeof(double));
  is.seekg(0);
  is.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(bytes));
  return v;
}

}  // namespace seqdesign
