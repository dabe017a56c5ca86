#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "seqdesign/rng.hpp"

using namespace seqdesign;

// Known-answer vectors of the Random123 reference implementation.
TEST(Philox, KnownAnswers) {
  using A4 = std::array<std::uint32_t, 4>;
  using A2 = std::array<std::uint32_t, 2>;
  EXPECT_EQ(philox4x32_10(A4{0, 0, 0, 0}, A2{0, 0}), (A4{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
  EXPECT_EQ(philox4x32_10(A4{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, A2{0xffffffff, 0xffffffff}),
            (A4{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
  EXPECT_EQ(philox4x32_10(A4{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, A2{0xa4093822, 0x299f31d0}),
            (A4{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(Stream, DeterministicAndDistinct) {
  StreamKey k;
  k.seed = 42;
  k.replicate = 7;
  RngStream a(k), b(k), c(k.with_lane(Lane::posterior)), d(k.with_index(1));
  for (int i = 0; i < 100; ++i) {
    const double x = a.uniform();
    EXPECT_EQ(x, b.uniform());
    EXPECT_NE(x, c.uniform());
    EXPECT_NE(x, d.uniform());
  }
}

TEST(Stream, UniformMomentsAndRange) {
  RngStream r(StreamKey{});
  const int N = 200000;
  double s = 0, s2 = 0;
  for (int i = 0; i < N; ++i) {
    const double u = r.uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
    s += u;
    s2 += u * u;
  }
  EXPECT_NEAR(s / N, 0.5, 4 * std::sqrt(1.0 / 12 / N));
  EXPECT_NEAR(s2 / N - (s / N) * (s / N), 1.0 / 12, 2e-3);
}

TEST(Stream, BelowIsUnbiased) {
  RngStream r(StreamKey{});
  std::vector<int> counts(7, 0);
  for (int i = 0; i < 70000; ++i) counts[r.below(7)]++;
  for (int c : counts) EXPECT_NEAR(c, 10000, 450);
}

TEST(Stream, NormalGammaBetaMoments) {
  RngStream r(StreamKey{});
  const int N = 100000;
  double zn = 0, zn2 = 0, g = 0, g2 = 0, gs = 0, b = 0;
  for (int i = 0; i < N; ++i) {
    const double z = r.normal();
    zn += z;
    zn2 += z * z;
    const double x = r.gamma(3.5);
    g += x;
    g2 += x * x;
    gs += r.gamma(0.4);
    b += r.beta(2.0, 6.0);
  }
  EXPECT_NEAR(zn / N, 0.0, 0.015);
  EXPECT_NEAR(zn2 / N, 1.0, 0.02);
  EXPECT_NEAR(g / N, 3.5, 0.03);
  EXPECT_NEAR(g2 / N - (g / N) * (g / N), 3.5, 0.1);
  EXPECT_NEAR(gs / N, 0.4, 0.01);
  EXPECT_NEAR(b / N, 0.25, 0.003);
}
