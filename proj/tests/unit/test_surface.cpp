#include <cmath>

#include <gtest/gtest.h>

#include "seqdesign/design/surface.hpp"
#include "seqdesign/error.hpp"
#include "synthetic.hpp"

using namespace seqdesign;

namespace {

// b = a with every logit scaled by factor > 0 (ranks preserved), at n_b.
SummaryMatrix scaled_copy(const SummaryMatrix& a, long n_b, double factor, double shift = 0.0) {
  SummaryMatrix b = a;
  b.schedule = a.schedule.at(n_b);
  for (auto& row : b.rows) {
    for (double& v : row.tau) v = expit(factor * logit(v) + shift);
    for (double& v : row.tau_P) v = expit(factor * logit(v) + shift);
  }
  return b;
}

ThresholdSet success_only(std::size_t T, double g) {
  ThresholdSet th;
  th.gamma.assign(T, g);
  return th;
}

}  // namespace

TEST(Surface, ReproducesAnchorsAndMidpoint) {
  const SummaryMatrix a = synth::random_matrix(500, {1.0, 2.0, 3.0}, 20, 0.3, 21, true);
  const SummaryMatrix b = scaled_copy(a, 60, 1.5, 0.4);
  for (PairingMode mode : {PairingMode::per_summary, PairingMode::stage1_rank}) {
    const LogitSurface s = fit_logit_surface(a, b, 1, mode);
    ASSERT_EQ(s.summaries(), 5u);
    for (std::size_t r = 0; r < 500; r += 37) {
      for (std::size_t t = 0; t < 3; ++t) {
        const double la = logit(a.rows[r].tau[t]);
        const double lb = 1.5 * la + 0.4;
        EXPECT_NEAR(s.logit_at(r, t, 20), la, 1e-9);
        EXPECT_NEAR(s.logit_at(r, t, 60), lb, 1e-9);
        EXPECT_NEAR(s.logit_at(r, t, 40), 0.5 * (la + lb), 1e-9);
        EXPECT_NEAR(s.slope(r, t), (lb - la) / 40.0, 1e-12);
      }
    }
    const SummaryMatrix at_a = extrapolate_matrix(s, 20);
    for (std::size_t r = 0; r < 500; ++r)
      for (std::size_t t = 0; t < 3; ++t) EXPECT_NEAR(at_a.rows[r].tau[t], a.rows[r].tau[t], 1e-9);
    EXPECT_EQ(at_a.schedule.n(), 20);
  }
}

TEST(Surface, ZeroSlopesGiveConstantMatrix) {
  const SummaryMatrix a = synth::random_matrix(300, {1.0, 2.0}, 20, 0.0, 22);
  const SummaryMatrix b = scaled_copy(a, 40, 1.0);
  const LogitSurface s = fit_logit_surface(a, b);
  const ThresholdSet th = success_only(2, 0.8);
  const auto pol = StoppingPolicy::standard(2, th);
  const double base = nu_rate(a, th, pol);
  for (long n : {5L, 30L, 200L}) EXPECT_DOUBLE_EQ(nu_rate(extrapolate_matrix(s, n), th, pol), base);
}

TEST(Surface, PowerMonotoneWhenSlopesPositive) {
  const SummaryMatrix a = synth::random_matrix(1000, {1.0, 2.0, 3.0}, 20, 0.5, 23);
  const SummaryMatrix b = scaled_copy(a, 40, 1.0, 1.0);
  const LogitSurface s = fit_logit_surface(a, b);
  const ThresholdSet th = success_only(3, 0.95);
  const auto pol = StoppingPolicy::standard(3, th);
  const auto curve = power_curve(s, th, pol, 10, 120);
  ASSERT_EQ(curve.size(), 111u);
  for (std::size_t i = 1; i < curve.size(); ++i) EXPECT_GE(curve[i].power, curve[i - 1].power);
}

TEST(Surface, FindMinN) {
  const SummaryMatrix a = synth::random_matrix(1000, {1.0, 2.0}, 20, 0.5, 24);
  const SummaryMatrix b = scaled_copy(a, 40, 1.0, 1.0);
  const LogitSurface s = fit_logit_surface(a, b);
  const ThresholdSet th = success_only(2, 0.97);
  const auto pol = StoppingPolicy::standard(2, th);
  EXPECT_EQ(find_min_n(s, th, pol, 0.0, 10, 100).n, 10);
  long prev = 0;
  for (double G1 : {0.3, 0.5, 0.7, 0.8, 0.9}) {
    const MinNResult r = find_min_n(s, th, pol, G1, 10, 200);
    EXPECT_GE(r.power, G1);
    EXPECT_GE(r.n, prev);
    // direct oracle: extrapolated matrix at n-1 falls short
    if (r.n > 10) EXPECT_LT(nu_rate(extrapolate_matrix(s, r.n - 1), th, pol), G1);
    EXPECT_DOUBLE_EQ(nu_rate(extrapolate_matrix(s, r.n), th, pol), r.power);
    prev = r.n;
  }
  try {
    find_min_n(s, th, pol, 0.99999, 10, 12);
    FAIL() << "expected NotFoundError";
  } catch (const NotFoundError& e) {
    EXPECT_GE(e.best_n(), 10);
    EXPECT_LE(e.best_n(), 12);
    EXPECT_LT(e.best_power(), 0.99999);
  }
}

TEST(Surface, ExtrapolationBand) {
  const SummaryMatrix a = synth::random_matrix(50, {1.0, 2.0}, 20, 0.1, 25);
  const LogitSurface s = fit_logit_surface(a, scaled_copy(a, 40, 1.1));
  EXPECT_FALSE(outside_extrapolation_band(s, 10));
  EXPECT_FALSE(outside_extrapolation_band(s, 80));
  EXPECT_TRUE(outside_extrapolation_band(s, 9));
  EXPECT_TRUE(outside_extrapolation_band(s, 81));
}

TEST(Surface, RejectsMismatchedAnchors) {
  const SummaryMatrix a = synth::random_matrix(50, {1.0, 2.0}, 20, 0.1, 26);
  EXPECT_THROW(fit_logit_surface(a, a), ConfigError);
  EXPECT_THROW(fit_logit_surface(a, synth::random_matrix(60, {1.0, 2.0}, 40, 0.1, 27)), ConfigError);
  EXPECT_THROW(fit_logit_surface(a, synth::random_matrix(50, {1.0, 3.0}, 40, 0.1, 27)), ConfigError);
}

TEST(SubgroupSplit, BlocksByDelta) {
  SummaryMatrix m = synth::random_matrix(10, {1.0}, 20, 0.0, 28);
  for (std::size_t r = 0; r < 10; ++r) m.rows[r].delta = double((r * 7) % 10);
  const auto g = subgroup_split(m, 2);
  for (std::size_t r = 0; r < 10; ++r) EXPECT_EQ(g[r], m.rows[r].delta < 5 ? 0u : 1u);
  const auto single = subgroup_split(m, 10);
  for (std::size_t r = 0; r < 10; ++r) EXPECT_EQ(single[r], std::size_t(m.rows[r].delta));
  EXPECT_THROW(subgroup_split(m, 11), ConfigError);
  EXPECT_THROW(subgroup_split(m, 0), ConfigError);

  const SummaryMatrix big = synth::random_matrix(10000, {1.0}, 20, 0.0, 29);
  const auto g10 = subgroup_split(big, 10);
  std::vector<int> count(10, 0);
  for (auto v : g10) count[v]++;
  for (int c : count) EXPECT_EQ(c, 1000);
}

// The n_a logits carry no information about delta but the n_b logits do, so only
// pairing within delta blocks can recover each replicate's n_b value.
TEST(Surface, SubgroupsTrackDeltaHeterogeneity) {
  const std::size_t R = 4000;
  SummaryMatrix a = synth::random_matrix(R, {1.0}, 20, 0.0, 30);
  SummaryMatrix b = synth::random_matrix(R, {1.0}, 40, 0.0, 31);
  StreamKey k;
  k.seed = 32;
  RngStream rng(k);
  for (std::size_t r = 0; r < R; ++r) {
    const double d = rng.uniform(-1, 1);
    a.rows[r].delta = d;
    a.rows[r].tau[0] = expit(rng.normal());
    const double d2 = rng.uniform(-1, 1);
    b.rows[r].delta = d2;
    b.rows[r].tau[0] = expit(4 * d2 + 0.3 * rng.normal());
  }
  const LogitSurface s1 = fit_logit_surface(a, b, 1);
  const LogitSurface s8 = fit_logit_surface(a, b, 8);
  double e1 = 0, e8 = 0;
  for (std::size_t r = 0; r < R; ++r) {
    const double truth = 4 * a.rows[r].delta;
    e1 += std::pow(s1.logit_at(r, 0, 40) - truth, 2);
    e8 += std::pow(s8.logit_at(r, 0, 40) - truth, 2);
  }
  EXPECT_LT(e8, 0.25 * e1);
}
