#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "seqdesign/design/stopping.hpp"
#include "seqdesign/design/surface.hpp"
#include "seqdesign/design/tuning.hpp"
#include "seqdesign_cli/config.hpp"

namespace seqdesign::cli {

struct SimulateOptions {
  long n = 0;
  std::string scenario = "alternative";
  std::string out;  // artifact prefix
  std::optional<double> pred_gamma;
  bool quiet = false;
};

// Writes the matrix artifact and returns the digest line.
std::string cmd_simulate(const DesignConfig& cfg, const SimulateOptions& opt, std::ostream& log);

// Tunes thresholds on a null matrix and writes the fragment to out.
TuneResult cmd_tune(const DesignConfig& cfg, const std::string& matrix_prefix, const std::string& out,
                    std::ostream& log);

OCReport cmd_oc(const DesignConfig& cfg, const std::string& matrix_prefix, const ThresholdSet& th,
                const std::string& out, std::ostream& log);

struct ProxyCheckOptions {
  std::vector<double> grid{1e4, 4e4};
  std::size_t configs = 20;
  std::string out;
};

void cmd_proxy_check(const DesignConfig& cfg, const ProxyCheckOptions& opt, std::ostream& log);

struct BootstrapOptions {
  std::string a, b;  // matrix prefixes
  std::string thresholds;
  std::vector<long> grid;  // empty = anchors range
  std::size_t B = 1000;
  double level = 0.95;
  std::string out;
};

void cmd_bootstrap(const DesignConfig& cfg, const BootstrapOptions& opt, std::ostream& log);

struct DesignReport {
  long n_a = 0;
  long n_b = 0;
  long recommended = 0;
  double extrapolated_power = 0.0;
  bool outside_band = false;
  std::vector<long> stage_sizes;
  TuneResult tuning;
  double anchor_power_a = 0.0;
  double anchor_power_b = 0.0;
  std::vector<PowerPoint> curve;
  std::optional<OCReport> confirm_alt;
  std::optional<OCReport> confirm_null;
  std::vector<std::string> resumed;  // steps loaded from an earlier run
};

// Algorithm driver: null anchor, tuning, alternative anchors, surface, scan and the
// optional confirmatory runs and bands. Each simulation is recorded in DIR/manifest.json;
// with resume set, recorded steps whose configuration hash matches are reloaded.
DesignReport cmd_design(const DesignConfig& cfg, const std::string& dir, bool resume, std::ostream& log);

}  // namespace seqdesign::cli
