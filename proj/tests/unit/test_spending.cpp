#include <cmath>

#include <gtest/gtest.h>

#include "seqdesign/design/spending.hpp"
#include "seqdesign/error.hpp"
#include "seqdesign/numeric.hpp"
#include "seqdesign/rng.hpp"

using namespace seqdesign;

TEST(Spending, FunctionValues) {
  EXPECT_NEAR(obf_spending(0.025, 1.0), 0.025, 1e-15);
  EXPECT_NEAR(obf_spending(0.025, 0.5), 2 * (1 - normal_cdf(normal_quantile(1 - 0.0125) / std::sqrt(0.5))), 1e-15);
  EXPECT_NEAR(obf_spending(0.025, 0.5), 0.00152, 1e-5);
  EXPECT_LT(obf_spending(0.1, 0.4), obf_spending(0.1, 0.6));
}

TEST(Spending, SingleAnalysisHasNoInterims) {
  EXPECT_TRUE(obf_initial_gammas(0.025, {1.0}).empty());
  EXPECT_EQ(obf_initial_gammas(0.025, {1.0}, true).size(), 1u);
}

TEST(Spending, RejectsBadGrid) {
  EXPECT_THROW(obf_initial_gammas(0.025, {1.0, 1.0}), ConfigError);
  EXPECT_THROW(obf_initial_gammas(0.0, {1.0, 2.0}), ConfigError);
}

// Oracle: Brownian motion built from independent increments, no Cholesky factor.
TEST(Spending, CrossingProbabilitiesMatchIncrements) {
  const std::vector<double> c{1.0, 2.0, 3.0};
  const double G = 0.025;
  SpendingCalibration cal;
  const auto g = obf_initial_gammas(G, c, true, cal);
  ASSERT_EQ(g.size(), 3u);
  EXPECT_NEAR(g[0], 1 - obf_spending(G, 1.0 / 3), 1e-12);  // first stage is exact
  std::vector<double> z(3);
  for (int t = 0; t < 3; ++t) z[t] = normal_quantile(g[t]);
  StreamKey k;
  k.seed = 777;
  RngStream rng(k);
  const int N = 2000000;
  std::vector<int> first(3, 0);
  for (int i = 0; i < N; ++i) {
    double s = 0, prev = 0;
    for (int t = 0; t < 3; ++t) {
      s += std::sqrt(c[t] - prev) * rng.normal();
      prev = c[t];
      if (s / std::sqrt(c[t]) >= z[t]) {
        first[t]++;
        break;
      }
    }
  }
  double cum = 0;
  for (int t = 0; t < 3; ++t) {
    cum += first[t] / double(N);
    const double target = obf_spending(G, c[t] / 3.0);
    EXPECT_NEAR(cum, target, 4 * std::sqrt(target / N) + 2e-4) << "stage " << t + 1;
  }
}
