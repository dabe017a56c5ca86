#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

namespace fs = std::filesystem;

namespace {

const char* kConfig = R"(
[model]
name = "normal"
sigma = 1.0

[hypothesis]
lower = 0.0
upper = "inf"

[schedule]
c = [1.0, 2.0]

[criteria]
Gamma0 = 0.05
Gamma1 = 0.8
replicates = 200
inner_replicates = 50

[scenario.null]
delta = 0.0

[scenario.alternative]
delta = 0.4

[thresholds]
rho = [0.05]

[anchors]
n_a = 20
n_min = 5
n_max = 100

[run]
seed = 5
)";

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run(const std::string& args) {
  const std::string cmd = std::string(SEQDESIGN_BIN) + " " + args + " > /dev/null 2>&1";
  const int st = std::system(cmd.c_str());
  return WEXITSTATUS(st);
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::path(::testing::TempDir()) / ("seqdesign_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    cfg = (dir / "cfg.toml").string();
    std::ofstream(cfg) << kConfig;
  }
  void TearDown() override { fs::remove_all(dir); }
  fs::path dir;
  std::string cfg;
};

}  // namespace

TEST_F(Cli, SimulateIsReproducible) {
  ASSERT_EQ(run("simulate " + cfg + " --n 20 --scenario null --out " + (dir / "a").string() + " --quiet"), 0);
  ASSERT_EQ(run("simulate " + cfg + " --n 20 --scenario null --workers 3 --out " + (dir / "b").string() +
                " --quiet"),
            0);
  const std::string a = slurp(dir / "a.csv");
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, slurp(dir / "b.csv"));
  EXPECT_EQ(a.substr(0, a.find('\n')), "replicate,delta_r,tau_1,tau_2,tauP_1");
}

TEST_F(Cli, SingleStageHasNoPredictiveColumns) {
  std::string text = kConfig;
  text.replace(text.find("c = [1.0, 2.0]"), 14, "c = [1.0]");
  text.replace(text.find("rho = [0.05]"), 12, "");
  std::ofstream(cfg) << text;
  ASSERT_EQ(run("simulate " + cfg + " --n 20 --out " + (dir / "s").string() + " --quiet"), 0);
  const std::string a = slurp(dir / "s.csv");
  EXPECT_EQ(a.substr(0, a.find('\n')), "replicate,delta_r,tau_1");
}

TEST_F(Cli, TuneAndOc) {
  ASSERT_EQ(run("simulate " + cfg + " --n 20 --scenario null --out " + (dir / "null").string() + " --quiet"), 0);
  ASSERT_EQ(run("tune " + cfg + " --matrix " + (dir / "null").string() + " --out " + (dir / "th.toml").string()), 0);
  EXPECT_NE(slurp(dir / "th.toml").find("[thresholds]"), std::string::npos);
  ASSERT_EQ(run("oc " + cfg + " --matrix " + (dir / "null").string() + " --thresholds " +
                (dir / "th.toml").string() + " --out " + (dir / "oc.csv").string()),
            0);
  const std::string oc = slurp(dir / "oc.csv");
  EXPECT_EQ(oc.substr(0, oc.find('\n')),
            "scenario,n,stage,n_t,cum_success,cum_failure,se_success,se_failure,nu_rate,expected_n");
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run("simulate"), 1);                           // missing arguments
  EXPECT_EQ(run("frobnicate " + cfg), 1);                  // unknown subcommand
  std::ofstream(dir / "bad.toml") << std::string(kConfig) + "\n[run]\nbogus = 1\n";
  EXPECT_EQ(run("simulate " + (dir / "bad.toml").string() + " --n 5 --out x"), 2);
  std::ofstream(dir / "unknown.toml") << std::string(kConfig).replace(std::string(kConfig).find("[run]"), 5, "[runx]");
  EXPECT_EQ(run("simulate " + (dir / "unknown.toml").string() + " --n 5 --out x"), 2);
  EXPECT_EQ(run("simulate " + cfg + " --n 5 --scenario sideways --out " + (dir / "x").string()), 1);
  // thresholds so loose that stage 1 alone exceeds the type I bound
  ASSERT_EQ(run("simulate " + cfg + " --n 20 --scenario null --out " + (dir / "n2").string() + " --quiet"), 0);
  std::string text = kConfig;
  text.replace(text.find("rho = [0.05]"), 12, "gamma = [0.01, 1.0]\nrho = [0.05]");
  std::ofstream(dir / "inf.toml") << text;
  EXPECT_EQ(run("tune " + (dir / "inf.toml").string() + " --matrix " + (dir / "n2").string()), 3);
}
