#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "seqdesign/error.hpp"
#include "seqdesign_cli/commands.hpp"

using namespace seqdesign;
using namespace seqdesign::cli;

namespace {

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> replicates;
  std::optional<unsigned> workers;
};

DesignConfig configured(const std::string& path, const Overrides& o) {
  DesignConfig cfg = load_config(path);
  if (o.seed) cfg.seed = *o.seed;
  if (o.replicates) cfg.replicates = *o.replicates;
  if (o.workers) cfg.workers = *o.workers;
  return cfg;
}

std::vector<double> parse_grid(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw Error("bad grid value '" + item + "'", ExitCode::usage);
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulation-based design of Bayesian group sequential experiments"};
  app.require_subcommand(1);
  std::string config;
  Overrides ov;
  auto common = [&](CLI::App* sub) {
    sub->add_option("config", config, "Design configuration (TOML)")->required()->check(CLI::ExistingFile);
    sub->add_option("--seed", ov.seed, "Base seed");
    sub->add_option("--replicates", ov.replicates, "Outer replicates R");
    sub->add_option("--workers", ov.workers, "Worker threads");
  };

  SimulateOptions sim;
  auto* s_sim = app.add_subcommand("simulate", "Estimate the joint sampling distribution at one n");
  common(s_sim);
  s_sim->add_option("--n", sim.n, "Stage-1 sample size")->required();
  s_sim->add_option("--scenario", sim.scenario, "null or alternative");
  s_sim->add_option("--out", sim.out, "Output prefix (PREFIX.csv, PREFIX.json)")->required();
  s_sim->add_option("--pred-gamma", sim.pred_gamma, "gamma_T used for predictive probabilities");
  s_sim->add_flag("--quiet", sim.quiet, "No progress output");

  std::string matrix, out, thresholds;
  auto* s_tune = app.add_subcommand("tune", "Tune thresholds on a null matrix");
  common(s_tune);
  s_tune->add_option("--matrix", matrix, "Null matrix prefix")->required();
  s_tune->add_option("--out", out, "Threshold fragment to write");

  auto* s_oc = app.add_subcommand("oc", "Operating characteristics of a matrix");
  common(s_oc);
  s_oc->add_option("--matrix", matrix, "Matrix prefix")->required();
  s_oc->add_option("--thresholds", thresholds, "Threshold fragment (default: initial thresholds)");
  s_oc->add_option("--out", out, "OC CSV to write");

  std::string dir;
  bool resume = false;
  auto* s_design = app.add_subcommand("design", "Full sample size recommendation");
  common(s_design);
  s_design->add_option("--out", dir, "Output directory")->required();
  s_design->add_flag("--resume", resume, "Reuse simulations recorded in the manifest");

  ProxyCheckOptions pc;
  std::string grid;
  auto* s_proxy = app.add_subcommand("proxy-check", "Large-sample slope checks on the proxy");
  common(s_proxy);
  s_proxy->add_option("--grid", grid, "Comma separated n values")->default_str("10000,40000");
  s_proxy->add_option("--configs", pc.configs, "Configurations per scenario");
  s_proxy->add_option("--out", pc.out, "CSV to write");

  BootstrapOptions bo;
  std::string bgrid;
  auto* s_boot = app.add_subcommand("bootstrap", "Pointwise bands for extrapolated stopping probabilities");
  common(s_boot);
  s_boot->add_option("--a", bo.a, "Matrix prefix at n_a")->required();
  s_boot->add_option("--b", bo.b, "Matrix prefix at n_b")->required();
  s_boot->add_option("--thresholds", bo.thresholds, "Threshold fragment")->required();
  s_boot->add_option("--grid", bgrid, "Comma separated n values");
  s_boot->add_option("-B", bo.B, "Resamples");
  s_boot->add_option("--level", bo.level, "Interval level");
  s_boot->add_option("--out", bo.out, "Bands CSV to write");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(ExitCode::usage);
  }

  try {
    const DesignConfig cfg = configured(config, ov);
    if (s_sim->parsed()) {
      std::cout << cmd_simulate(cfg, sim, std::cerr) << '\n';
    } else if (s_tune->parsed()) {
      const TuneResult r = cmd_tune(cfg, matrix, out, std::cout);
      std::cerr << "achieved null nu-rate " << r.achieved_rate << '\n';
    } else if (s_oc->parsed()) {
      const ThresholdSet th = thresholds.empty() ? initial_thresholds(cfg) : load_thresholds(thresholds);
      cmd_oc(cfg, matrix, th, out, std::cout);
    } else if (s_design->parsed()) {
      cmd_design(cfg, dir, resume, std::cout);
    } else if (s_proxy->parsed()) {
      if (!grid.empty()) pc.grid = parse_grid(grid);
      cmd_proxy_check(cfg, pc, std::cout);
    } else if (s_boot->parsed()) {
      if (!bgrid.empty())
        for (double v : parse_grid(bgrid)) bo.grid.push_back(static_cast<long>(v));
      cmd_bootstrap(cfg, bo, std::cout);
    }
  } catch (const Error& e) {
    std::cerr << "seqdesign: " << e.what() << '\n';
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    std::cerr << "seqdesign: " << e.what() << '\n';
    return static_cast<int>(ExitCode::runtime);
  }
  return 0;
}
