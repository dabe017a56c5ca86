#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "seqdesign/error.hpp"
#include "seqdesign/models/kde.hpp"
#include "seqdesign/numeric.hpp"
#include "seqdesign/rng.hpp"

using namespace seqdesign;

namespace {

std::vector<double> normal_draws(std::size_t n, double mu, double sd, std::uint64_t seed = 1) {
  StreamKey k;
  k.seed = seed;
  RngStream r(k);
  std::vector<double> x(n);
  for (auto& v : x) v = mu + sd * r.normal();
  return x;
}

double sample_sd(const std::vector<double>& x) {
  double m = 0;
  for (double v : x) m += v;
  m /= x.size();
  double s = 0;
  for (double v : x) s += (v - m) * (v - m);
  return std::sqrt(s / (x.size() - 1));
}

}  // namespace

TEST(Bandwidth, SilvermanFormula) {
  std::vector<double> x{1, 2, 3, 4, 5, 6, 7, 8, 9, 100};
  // type-7 quartiles of x: 3.25 and 7.75
  const double iqr = 7.75 - 3.25;
  const double expect = 0.9 * std::min(sample_sd(x), iqr / 1.34) * std::pow(10.0, -0.2);
  EXPECT_NEAR(bandwidth(x, Bandwidth::silverman), expect, 1e-12);
  EXPECT_NEAR(bandwidth(x, Bandwidth::scott), 1.06 * sample_sd(x) * std::pow(10.0, -0.2), 1e-12);
}

TEST(Bandwidth, ConstantSampleIsZero) {
  std::vector<double> x(200, 3.0);
  EXPECT_EQ(bandwidth(x, Bandwidth::silverman), 0.0);
  EXPECT_EQ(kde_interval_mass(x, 2.0, 4.0, Bandwidth::silverman), 1.0);
  EXPECT_EQ(kde_interval_mass(x, 3.5, 4.0, Bandwidth::silverman), 0.0);
}

TEST(Kde, IntervalMassMatchesDirectSum) {
  const auto x = normal_draws(500, 0.3, 1.2);
  const double h = bandwidth(x, Bandwidth::silverman);
  double direct = 0;
  for (double v : x) direct += normal_cdf((1.0 - v) / h) - normal_cdf((-0.5 - v) / h);
  EXPECT_NEAR(kde_interval_mass(x, -0.5, 1.0, Bandwidth::silverman), direct / x.size(), 1e-12);
  double upper = 0;
  for (double v : x) upper += normal_sf((0.2 - v) / h);
  EXPECT_NEAR(kde_interval_mass(x, 0.2, kInf, Bandwidth::silverman), upper / x.size(), 1e-12);
}

TEST(Kde, ApproximatesTrueProbability) {
  const auto x = normal_draws(20000, 0.0, 1.0, 9);
  EXPECT_NEAR(kde_interval_mass(x, 0.5, kInf, Bandwidth::silverman), normal_sf(0.5), 0.01);
}

TEST(PosteriorProb, NeedsEnoughDraws) {
  const auto x = normal_draws(99, 0.0, 1.0);
  EXPECT_THROW(posterior_prob_H1(x, Hypothesis(0.0, kInf)), InsufficientSampleError);
  const auto y = normal_draws(100, 0.0, 1.0);
  EXPECT_NO_THROW(posterior_prob_H1(y, Hypothesis(0.0, kInf)));
}

TEST(PosteriorProb, ClampedAtDrawResolution) {
  const auto x = normal_draws(400, 10.0, 0.1);
  EXPECT_DOUBLE_EQ(posterior_prob_H1(x, Hypothesis(0.0, kInf)), 1.0 - 1.0 / 800);
  EXPECT_DOUBLE_EQ(posterior_prob_H1(x, Hypothesis(-kInf, 0.0)), 1.0 / 800);
}

TEST(Transform, LogitScaleEndpoints) {
  EXPECT_EQ(apply_transform(DeltaTransform::logit, 0.0), -kInf);
  EXPECT_EQ(apply_transform(DeltaTransform::log, -1.0), -kInf);
  EXPECT_EQ(apply_transform(DeltaTransform::log, kInf), kInf);
  EXPECT_NEAR(apply_transform(DeltaTransform::logit, 0.03), std::log(0.03 / 0.97), 1e-15);
  // H1: delta < 0.03 on the logit scale of draws near 0.025 equals the direct fraction
  // when the draws sit far from the endpoint.
  std::vector<double> d(300, 0.0);
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = 0.01 + 0.00001 * i;
  EXPECT_DOUBLE_EQ(posterior_prob_H1(d, Hypothesis(-kInf, 0.03), Bandwidth::silverman, DeltaTransform::logit),
                   1.0 - 1.0 / 600);
}
