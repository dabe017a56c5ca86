#include <sstream>

#include <gtest/gtest.h>

#include "seqdesign/error.hpp"
#include "seqdesign/matrix_io.hpp"
#include "synthetic.hpp"

using namespace seqdesign;

TEST(MatrixIO, CsvRoundTripIsExact) {
  const SummaryMatrix m = synth::random_matrix(100, {1.0, 1.5, 2.0}, 20, 0.2, 51, true);
  std::stringstream ss;
  write_matrix_csv(m, ss);
  std::string header;
  std::getline(std::stringstream(ss.str()), header);
  EXPECT_EQ(header, "replicate,delta_r,tau_1,tau_2,tau_3,tauP_1,tauP_2");
  const auto rows = read_matrix_csv(ss, 3);
  ASSERT_EQ(rows.size(), 100u);
  for (std::size_t r = 0; r < 100; ++r) {
    EXPECT_EQ(rows[r].delta, m.rows[r].delta);
    EXPECT_EQ(rows[r].tau, m.rows[r].tau);
    EXPECT_EQ(rows[r].tau_P, m.rows[r].tau_P);
  }
}

TEST(MatrixIO, SingleStageHasNoPredictiveColumns) {
  const SummaryMatrix m = synth::random_matrix(5, {1.0}, 20, 0.2, 52);
  std::stringstream ss;
  write_matrix_csv(m, ss);
  std::string header;
  std::getline(ss, header);
  EXPECT_EQ(header, "replicate,delta_r,tau_1");
}

TEST(MatrixIO, ColumnMismatchIsConfigError) {
  const SummaryMatrix m = synth::random_matrix(5, {1.0, 2.0}, 20, 0.2, 53);
  std::stringstream ss;
  write_matrix_csv(m, ss);
  std::stringstream copy(ss.str());
  EXPECT_THROW(read_matrix_csv(ss, 3), ConfigError);
  std::stringstream bad("replicate,delta_r,tau_1,tau_2\n0,0.1,0.5\n");
  EXPECT_THROW(read_matrix_csv(bad, 2), ConfigError);
  EXPECT_NO_THROW(read_matrix_csv(copy, 2));
}

TEST(MatrixIO, FormatDoubleRoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, 0.9999999999999999, 123456.789}) {
    EXPECT_EQ(std::stod(format_double(v)), v);
  }
}

TEST(MatrixIO, InnerBinaryRoundTrip) {
  SummaryMatrix m = synth::random_matrix(4, {1.0, 2.0}, 20, 0.2, 54, true);
  m.pred_draws = 3;
  for (int i = 0; i < 12; ++i) m.inner.push_back(i / 13.0);
  const std::string path = ::testing::TempDir() + "inner_rt.bin";
  write_inner_bin(m, path);
  EXPECT_EQ(read_inner_bin(path), m.inner);
}
