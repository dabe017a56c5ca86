#include <cmath>

#include <gtest/gtest.h>

#include "seqdesign/error.hpp"
#include "seqdesign/models/normal.hpp"
#include "seqdesign/models/predictive.hpp"
#include "seqdesign/numeric.hpp"

using namespace seqdesign;

namespace {

struct PredCase {
  NormalModel model{{1.0, 0.0, kInf, true, 10000000}};
  AnalysisSchedule schedule{{1.0, 2.0, 3.0}, 30};
  Hypothesis hyp{0.0, kInf};
  DataBlock data;
  PredCase() {
    StreamKey k;
    k.seed = 77;
    k.lane = Lane::data;
    model.generate({0.15}, k, 0, 30, data);
  }
};

}  // namespace

// For a flat-prior normal mean the predictive law of the final estimate is normal with
// variance sigma^2 (n_T - n_t) / (n_t n_T), which gives a closed form.
TEST(Predictive, MatchesConjugateOracle) {
  PredCase s;
  const DataView view(s.data);
  const PosteriorFit fit = s.model.fit(view, MCMCSettings{}, StreamKey{});
  const double gT = 0.95, nt = 30, nT = 90;
  double xbar = 0;
  for (double y : s.data.y) xbar += y;
  xbar /= nt;
  const double oracle =
      normal_cdf((xbar - normal_quantile(gT) / std::sqrt(nT)) / std::sqrt((nT - nt) / (nt * nT)));
  const std::size_t M = 4000;
  StreamKey key;
  key.seed = 5;
  const PredictiveResult r = predictive_prob(s.model, view, fit, s.schedule, 0, s.hyp, gT, M, MCMCSettings{}, key);
  EXPECT_EQ(r.inner.size(), M);
  EXPECT_NEAR(r.prob, oracle, 4 * std::sqrt(oracle * (1 - oracle) / M) + 1e-3);
  std::size_t hits = 0;
  for (double v : r.inner) hits += v >= gT;
  EXPECT_DOUBLE_EQ(r.prob, clamp_prob(static_cast<double>(hits) / M, M));
}

TEST(Predictive, Contracts) {
  PredCase s;
  const DataView view(s.data);
  const PosteriorFit fit = s.model.fit(view, MCMCSettings{}, StreamKey{});
  EXPECT_THROW(predictive_prob(s.model, view, fit, s.schedule, 2, s.hyp, 0.9, 10, MCMCSettings{}, StreamKey{}),
               StageIndexError);
  EXPECT_THROW(predictive_prob(s.model, DataView(s.data, 20), fit, s.schedule, 0, s.hyp, 0.9, 10, MCMCSettings{},
                               StreamKey{}),
               ContractViolation);
  EXPECT_THROW(predictive_prob(s.model, view, fit, s.schedule, 0, s.hyp, 0.9, 0, MCMCSettings{}, StreamKey{}),
               ContractViolation);
}

TEST(Predictive, DeterministicAndMonotoneInGamma) {
  PredCase s;
  const DataView view(s.data);
  const PosteriorFit fit = s.model.fit(view, MCMCSettings{}, StreamKey{});
  const auto a = predictive_prob(s.model, view, fit, s.schedule, 0, s.hyp, 0.9, 500, MCMCSettings{}, StreamKey{});
  const auto b = predictive_prob(s.model, view, fit, s.schedule, 0, s.hyp, 0.9, 500, MCMCSettings{}, StreamKey{});
  EXPECT_EQ(a.inner, b.inner);
  const auto c = predictive_prob(s.model, view, fit, s.schedule, 0, s.hyp, 0.99, 500, MCMCSettings{}, StreamKey{});
  EXPECT_EQ(a.inner, c.inner);  // same inner replicates, only the threshold moves
  EXPECT_LE(c.prob, a.prob);
}
