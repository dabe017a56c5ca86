#include <gtest/gtest.h>

#include "seqdesign/error.hpp"
#include "seqdesign_cli/config.hpp"

using namespace seqdesign;
using namespace seqdesign::cli;

namespace {

const char* kNormal = R"(
[model]
name = "normal"
sigma = 2.0
prior_sd = "inf"

[hypothesis]
lower = 0.0
upper = "inf"

[schedule]
c = [1.0, 2.0, 3.0]

[criteria]
Gamma0 = 0.025
Gamma1 = 0.8
replicates = 500

[scenario.null]
delta = 0.0

[scenario.alternative]
kind = "predictive"
distribution = "uniform"
lower = 0.2
upper = 0.6

[thresholds]
gamma = [0.999, 0.99, 0.975]
strategy = "fixed"

[anchors]
n_a = 40
n_min = 10
n_max = 200

[run]
seed = 77
)";

}  // namespace

TEST(Config, ParsesValues) {
  const DesignConfig c = parse_config(kNormal);
  EXPECT_EQ(c.model.name, "normal");
  EXPECT_DOUBLE_EQ(c.model.normal.sigma, 2.0);
  EXPECT_TRUE(std::isinf(c.model.normal.prior_sd));
  EXPECT_EQ(c.c, (std::vector<double>{1.0, 2.0, 3.0}));
  EXPECT_EQ(c.replicates, 500u);
  EXPECT_EQ(c.alt_scenario.kind, ScenarioKind::predictive);
  EXPECT_DOUBLE_EQ(c.alt_scenario.sampler.b, 0.6);
  EXPECT_EQ(c.thresholds.strategy, TuneStrategy::fixed);
  EXPECT_EQ(c.n_a, 40);
  EXPECT_FALSE(c.n_b.has_value());
  EXPECT_EQ(c.seed, 77u);
  EXPECT_EQ(initial_thresholds(c).gamma, (std::vector<double>{0.999, 0.99, 0.975}));
}

TEST(Config, SerializeRoundTrip) {
  const DesignConfig c = parse_config(kNormal);
  const std::string text = serialize_config(c);
  const DesignConfig d = parse_config(text, "roundtrip");
  EXPECT_EQ(serialize_config(d), text);
  EXPECT_EQ(d.c, c.c);
  EXPECT_EQ(d.alt_scenario.sampler.a, c.alt_scenario.sampler.a);
}

TEST(Config, UnknownKeyReportsPosition) {
  std::string text = kNormal;
  text += "\n[design]\nsubgroup = 4\n";
  try {
    parse_config(text, "x.toml");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("x.toml:"), std::string::npos) << msg;
    EXPECT_NE(msg.find("design.subgroup"), std::string::npos) << msg;
  }
}

TEST(Config, RejectsBadValues) {
  auto with = [](const std::string& from, const std::string& to) {
    std::string t = kNormal;
    t.replace(t.find(from), from.size(), to);
    return t;
  };
  EXPECT_THROW(parse_config(with("c = [1.0, 2.0, 3.0]", "c = [1.0, 3.0, 2.0]")), ConfigError);
  EXPECT_THROW(parse_config(with("Gamma0 = 0.025", "Gamma0 = 1.5")), ConfigError);
  EXPECT_THROW(parse_config(with("name = \"normal\"", "name = \"weibull\"")), ConfigError);
  EXPECT_THROW(parse_config(with("strategy = \"fixed\"", "strategy = \"greedy\"")), ConfigError);
  EXPECT_THROW(parse_config(with("replicates = 500", "replicates = \"many\"")), ConfigError);
  EXPECT_THROW(parse_config("not = [valid"), ConfigError);
}

TEST(Config, ThresholdFragmentRoundTrip) {
  ThresholdSet th;
  th.gamma = {0.9990123456789, 0.97, 0.95};
  th.rho = std::vector<double>{0.1, 0.2};
  const std::string text = serialize_thresholds(th, {"kappa=1 null_nu_rate=0.02"});
  const ThresholdSet back = parse_thresholds(text);
  EXPECT_EQ(back.gamma, th.gamma);
  ASSERT_TRUE(back.rho.has_value());
  EXPECT_EQ(*back.rho, *th.rho);
  EXPECT_FALSE(back.xi.has_value());
}
