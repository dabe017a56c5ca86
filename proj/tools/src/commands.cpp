#include "seqdesign_cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <set>

#include <json.hpp>

#include "seqdesign/design/bootstrap.hpp"
#include "seqdesign/error.hpp"
#include "seqdesign/matrix_io.hpp"
#include "seqdesign/proxy.hpp"
#include "seqdesign/rng.hpp"
#include "seqdesign_cli/artifacts.hpp"

namespace seqdesign::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

ProgressFn progress_printer(std::ostream& log, const std::string& what, bool quiet) {
  if (quiet) return {};
  auto last = std::make_shared<std::size_t>(0);
  return [&log, what, last](std::size_t done, std::size_t total) {
    const std::size_t pct = done * 20 / std::max<std::size_t>(total, 1);
    if (pct > *last || done == total) {
      *last = pct;
      log << what << ": " << done << "/" << total << " replicates\n" << std::flush;
    }
  };
}

std::ofstream open_out(const std::string& path) {
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream os(path);
  if (!os) throw Error("cannot write " + path);
  return os;
}

// tau_P recomputed for the thresholds' gamma_T when the matrix stores the inner values.
SummaryMatrix aligned(const SummaryMatrix& m, const ThresholdSet& th) {
  if (m.has_inner() && m.pred_gamma != th.gamma.back()) return m.with_pred_gamma(th.gamma.back());
  return m;
}

TuneResult tune(const DesignConfig& cfg, const SummaryMatrix& null_m, const ThresholdSet& th0) {
  const StoppingPolicy policy = policy_for(cfg, th0);
  switch (cfg.thresholds.strategy) {
    case TuneStrategy::final_gamma: return tune_final_gamma(null_m, th0, policy, cfg.Gamma0);
    case TuneStrategy::proportional: return tune_proportional(null_m, th0, policy, cfg.Gamma0);
    case TuneStrategy::fixed: {
      TuneResult r;
      r.thresholds = th0;
      r.achieved_rate = null_rate(null_m, th0, policy);
      return r;
    }
  }
  throw ContractViolation("unknown tuning strategy");
}

std::vector<std::string> tune_audit(const DesignConfig& cfg, const TuneResult& r) {
  std::vector<std::string> lines;
  char buf[160];
  lines.push_back("strategy " + strategy_name(cfg.thresholds.strategy));
  std::snprintf(buf, sizeof buf, "achieved null nu-rate %.6f (bound %.6g)", r.achieved_rate, cfg.Gamma0);
  lines.emplace_back(buf);
  if (cfg.thresholds.strategy == TuneStrategy::proportional) {
    std::snprintf(buf, sizeof buf, "kappa %.9f", r.kappa);
    lines.emplace_back(buf);
  }
  lines.insert(lines.end(), r.audit.begin(), r.audit.end());
  return lines;
}

std::string vec_str(const std::vector<double>& v, const char* fmt = "%.4f") {
  std::string s = "(";
  char buf[48];
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::snprintf(buf, sizeof buf, fmt, v[i]);
    s += (i ? ", " : "") + std::string(buf);
  }
  return s + ")";
}

std::vector<long> default_grid(long lo, long hi) {
  std::vector<long> g;
  const long stride = std::max(1L, (hi - lo) / 24);
  for (long n = lo; n <= hi; n += stride) g.push_back(n);
  if (g.back() != hi) g.push_back(hi);
  return g;
}

json oc_json(const OCReport& oc) {
  return {{"n", oc.n},
          {"scenario", oc.scenario},
          {"cum_success", oc.cum_success},
          {"cum_failure", oc.cum_failure},
          {"nu_rate", oc.nu_rate},
          {"nu_se", oc.nu_se},
          {"expected_n", oc.expected_n},
          {"replicates", oc.replicates}};
}

}  // namespace

std::string cmd_simulate(const DesignConfig& cfg, const SimulateOptions& opt, std::ostream& log) {
  if (opt.n < 1) throw Error("simulate needs --n >= 1", ExitCode::usage);
  if (opt.out.empty()) throw Error("simulate needs --out", ExitCode::usage);
  const Scenario& sc = scenario_by_name(cfg, opt.scenario);
  const ThresholdSet th0 = initial_thresholds(cfg);
  const RunPlan plan = run_plan(cfg, sc, opt.n, simulation_seed(cfg.seed, sc.label, opt.n),
                                opt.pred_gamma.value_or(th0.gamma.back()));
  const SummaryMatrix m = simulate_summary_matrix(plan, cfg.workers, progress_printer(log, "simulate", opt.quiet));
  save_matrix(m, opt.out, plan.model->describe());
  const double rate = null_rate(m, th0, policy_for(cfg, th0));
  char buf[256];
  std::snprintf(buf, sizeof buf, "simulated %s %s n=%ld R=%zu T=%zu tau_P=%s nu-rate=%.4f at initial thresholds",
                label_name(sc.label), kind_name(sc.kind), opt.n, m.replicates(), m.stages(),
                m.has_tau_P() ? "yes" : "no", rate);
  return buf;
}

TuneResult cmd_tune(const DesignConfig& cfg, const std::string& prefix, const std::string& out, std::ostream& log) {
  const SummaryMatrix m = load_matrix(prefix);
  if (m.scenario.label != ScenarioLabel::null) throw ConfigError(prefix + ": tuning needs a null-scenario matrix");
  if (m.stages() != cfg.c.size()) throw ConfigError(prefix + ": matrix stages disagree with the config schedule");
  const TuneResult r = tune(cfg, m, initial_thresholds(cfg));
  const std::string text = serialize_thresholds(r.thresholds, tune_audit(cfg, r));
  if (out.empty()) log << text;
  else open_out(out) << text;
  return r;
}

OCReport cmd_oc(const DesignConfig& cfg, const std::string& prefix, const ThresholdSet& th, const std::string& out,
                std::ostream& log) {
  const SummaryMatrix raw = load_matrix(prefix);
  try {
    th.validate(raw.stages());
  } catch (const Error& e) {
    throw ConfigError(prefix + ": thresholds do not match the matrix: " + e.what());
  }
  const SummaryMatrix m = aligned(raw, th);
  const OCReport oc = operating_characteristics(m, th, policy_for(cfg, th));
  if (out.empty()) {
    write_oc_csv(log, oc, m.schedule.sizes());
  } else {
    auto os = open_out(out);
    write_oc_csv(os, oc, m.schedule.sizes());
  }
  return oc;
}

void cmd_proxy_check(const DesignConfig& cfg, const ProxyCheckOptions& opt, std::ostream& log) {
  if (opt.grid.size() < 2) throw Error("proxy-check needs at least two grid values", ExitCode::usage);
  const ModelPtr model = build_model(cfg.model);
  const AnalysisSchedule sched(cfg.c, 1);
  const std::size_t T = sched.stages();
  const double gT = initial_thresholds(cfg).gamma.back() < 1.0 ? initial_thresholds(cfg).gamma.back() : 0.9;
  const double qL = select_qL(cfg.hyp, gT, std::nullopt);
  std::ofstream file;
  std::ostream* os = &log;
  if (!opt.out.empty()) {
    file = open_out(opt.out);
    os = &file;
  }
  *os << "config,scenario,delta,stage,summary,n,slope,slope_u2,limit,rel_change,u_rel_diff,sign,saturated\n";
  for (const Scenario* sc : {&cfg.alt_scenario, &cfg.null_scenario}) {
    for (std::size_t k = 0; k < opt.configs; ++k) {
      StreamKey key;
      key.seed = cfg.seed;
      key.lane = Lane::calibration;
      key.replicate = static_cast<std::uint32_t>(k);
      key.sub = sc->label == ScenarioLabel::null ? 1 : 0;
      RngStream rng(key);
      ProxyState s1, s2;
      s1.delta = sc->sampler.draw(rng);
      s1.theta = model->theta_for_delta(s1.delta);
      s1.sigma_sq = model->sigma_sq(s1.theta);
      s2 = s1;
      s1.u.resize(T);
      s2.u.resize(T);
      for (std::size_t t = 0; t < T; ++t) {
        s1.u[t] = rng.uniform(0.2, 0.8);
        s2.u[t] = rng.uniform(0.2, 0.8);
      }
      for (std::size_t t = 0; t < T; ++t) {
        for (int kind = 0; kind < 2; ++kind) {
          if (kind == 1 && t + 1 >= T) continue;
          SlopeQuery q;
          q.summary = kind == 0 ? ProxySummary::tau : ProxySummary::tau_pred;
          q.stage = t;
          q.gamma_T = gT;
          q.q_L = qL;
          const double limit = kind == 0 ? limiting_slope_tau(s1.delta, s1.sigma_sq, cfg.hyp, sched.c(t))
                                         : limiting_slope_tau_pred(s1.delta, s1.sigma_sq, cfg.hyp, sched.c(t),
                                                                   sched.c(T - 1));
          double prev = std::nan("");
          for (double n : opt.grid) {
            const SlopeResult a = numeric_limit_slope(q, s1, sched, cfg.hyp, n);
            const SlopeResult b = numeric_limit_slope(q, s2, sched, cfg.hyp, n);
            const double rel = std::isnan(prev) ? std::nan("") : std::fabs(a.slope - prev) / std::fabs(prev);
            const double ud = std::fabs(a.slope - b.slope) / std::max(std::fabs(a.slope), 1e-300);
            const char* sign = a.slope > 0 ? "+" : (a.slope < 0 ? "-" : "0");
            *os << k << ',' << label_name(sc->label) << ',' << format_double(s1.delta) << ',' << (t + 1) << ','
                << (kind == 0 ? "tau" : "tau_P") << ',' << format_double(n) << ',' << format_double(a.slope) << ','
                << format_double(b.slope) << ',' << format_double(limit) << ',' << format_double(rel) << ','
                << format_double(ud) << ',' << sign << ',' << ((a.saturated || b.saturated) ? 1 : 0) << '\n';
            prev = a.slope;
          }
        }
      }
    }
  }
}

void cmd_bootstrap(const DesignConfig& cfg, const BootstrapOptions& opt, std::ostream& log) {
  const ThresholdSet th = load_thresholds(opt.thresholds);
  const SummaryMatrix a = aligned(load_matrix(opt.a), th);
  const SummaryMatrix b = aligned(load_matrix(opt.b), th);
  BootstrapSettings st;
  st.B = opt.B;
  st.level = opt.level;
  st.subgroups = cfg.subgroups;
  st.mode = cfg.pairing;
  st.seed = cfg.seed;
  st.workers = cfg.workers;
  const std::vector<long> grid = opt.grid.empty() ? default_grid(cfg.n_min, cfg.n_max) : opt.grid;
  const auto bands = bootstrap_bands(a, b, th, policy_for(cfg, th), grid, st);
  if (opt.out.empty()) {
    write_bands_csv(log, bands);
  } else {
    auto os = open_out(opt.out);
    write_bands_csv(os, bands);
  }
}

DesignReport cmd_design(const DesignConfig& cfg, const std::string& dir, bool resume, std::ostream& log) {
  fs::create_directories(dir);
  DesignConfig hashed = cfg;
  hashed.workers = 1;
  const std::string hash = std::to_string(fnv1a(serialize_config(hashed)));
  const fs::path manifest_path = fs::path(dir) / "manifest.json";
  json manifest = {{"config_hash", hash}, {"steps", json::object()}};
  if (resume && fs::exists(manifest_path)) {
    std::ifstream is(manifest_path);
    json old;
    try {
      is >> old;
    } catch (const json::exception& e) {
      throw ConfigError(manifest_path.string() + ": " + e.what());
    }
    if (old.value("config_hash", std::string()) != hash)
      throw ConfigError(manifest_path.string() + ": recorded for a different configuration; rerun without --resume");
    manifest = old;
  }
  {
    std::ofstream os(fs::path(dir) / "config.toml");
    os << serialize_config(cfg);
  }
  auto save_manifest = [&] {
    std::ofstream os(manifest_path);
    os << manifest.dump(2) << '\n';
  };
  save_manifest();

  DesignReport report;
  const ModelPtr model = build_model(cfg.model);
  auto step = [&](const std::string& name, const Scenario& sc, long n, double pred_gamma) {
    const std::string prefix = (fs::path(dir) / name).string();
    const json& steps = manifest["steps"];
    if (resume && steps.contains(name) && steps[name].value("n", -1L) == n && matrix_exists(prefix)) {
      log << "resumed " << name << " (n=" << n << ") from " << prefix << ".csv\n";
      report.resumed.push_back(name);
      return load_matrix(prefix);
    }
    const RunPlan plan = run_plan(cfg, sc, n, simulation_seed(cfg.seed, sc.label, n), pred_gamma);
    log << "simulating " << name << ": " << label_name(sc.label) << " n=" << n << " R=" << plan.replicates << "\n"
        << std::flush;
    SummaryMatrix m = simulate_summary_matrix(plan, cfg.workers, progress_printer(log, name, false));
    save_matrix(m, prefix, model->describe());
    manifest["steps"][name] = {{"n", n}, {"scenario", label_name(sc.label)}, {"prefix", name}};
    save_manifest();
    return m;
  };

  const ThresholdSet th0 = initial_thresholds(cfg);
  report.n_a = cfg.n_a;
  const SummaryMatrix null_a = step("null_a", cfg.null_scenario, cfg.n_a, th0.gamma.back());
  report.tuning = tune(cfg, null_a, th0);
  const ThresholdSet& th = report.tuning.thresholds;
  const StoppingPolicy policy = policy_for(cfg, th);
  open_out((fs::path(dir) / "thresholds.toml").string()) << serialize_thresholds(th, tune_audit(cfg, report.tuning));
  log << "tuned gamma " << vec_str(th.gamma) << " null nu-rate " << report.tuning.achieved_rate << "\n";

  const SummaryMatrix alt_a = aligned(step("alt_a", cfg.alt_scenario, cfg.n_a, th.gamma.back()), th);
  report.anchor_power_a = nu_rate(alt_a, th, policy);
  report.n_b = cfg.n_b ? *cfg.n_b
                       : (report.anchor_power_a >= cfg.Gamma1 ? std::max(1L, cfg.n_a / 2) : 2 * cfg.n_a);
  const SummaryMatrix alt_b = aligned(step("alt_b", cfg.alt_scenario, report.n_b, th.gamma.back()), th);
  report.anchor_power_b = nu_rate(alt_b, th, policy);

  const LogitSurface surface = fit_logit_surface(alt_a, alt_b, cfg.subgroups, cfg.pairing);
  {
    auto os = open_out((fs::path(dir) / "power_curve.csv").string());
    os << "n,stage,cum_success,cum_failure,se\n";
    for (long n = cfg.n_min; n <= cfg.n_max; ++n) {
      const OCReport oc = operating_characteristics(extrapolate_matrix(surface, n), th, policy);
      for (std::size_t t = 0; t < oc.cum_success.size(); ++t)
        os << n << ',' << (t + 1) << ',' << format_double(oc.cum_success[t]) << ','
           << format_double(oc.cum_failure[t]) << ',' << format_double(oc.se_success[t]) << '\n';
    }
  }
  const MinNResult found = find_min_n(surface, th, policy, cfg.Gamma1, cfg.n_min, cfg.n_max);
  report.recommended = found.n;
  report.extrapolated_power = found.power;
  report.curve = found.curve;
  report.outside_band = outside_extrapolation_band(surface, found.n);
  report.stage_sizes = AnalysisSchedule(cfg.c, found.n).sizes();
  if (report.outside_band)
    log << "warning: n=" << found.n << " lies outside the reliable extrapolation band of the anchors\n";

  if (cfg.confirm) {
    const SummaryMatrix ca = aligned(step("confirm_alt", cfg.alt_scenario, found.n, th.gamma.back()), th);
    const SummaryMatrix cn = aligned(step("confirm_null", cfg.null_scenario, found.n, th.gamma.back()), th);
    report.confirm_alt = operating_characteristics(ca, th, policy);
    report.confirm_null = operating_characteristics(cn, th, policy);
    auto os = open_out((fs::path(dir) / "confirm_oc.csv").string());
    write_oc_csv(os, *report.confirm_alt, ca.schedule.sizes());
    write_oc_csv(os, *report.confirm_null, cn.schedule.sizes(), false);
  }
  if (cfg.bootstrap > 0) {
    BootstrapSettings st;
    st.B = cfg.bootstrap;
    st.level = cfg.bootstrap_level;
    st.subgroups = cfg.subgroups;
    st.mode = cfg.pairing;
    st.seed = cfg.seed;
    st.workers = cfg.workers;
    const auto bands = bootstrap_bands(alt_a, alt_b, th, policy, default_grid(cfg.n_min, cfg.n_max), st);
    auto os = open_out((fs::path(dir) / "bands.csv").string());
    write_bands_csv(os, bands);
  }

  json rep = {{"recommended_n", report.recommended},
              {"stage_sizes", report.stage_sizes},
              {"extrapolated_power", report.extrapolated_power},
              {"outside_extrapolation_band", report.outside_band},
              {"n_a", report.n_a},
              {"n_b", report.n_b},
              {"anchor_power_a", report.anchor_power_a},
              {"anchor_power_b", report.anchor_power_b},
              {"thresholds",
               {{"gamma", th.gamma},
                {"xi", th.xi ? json(*th.xi) : json(nullptr)},
                {"eta", th.eta ? json(*th.eta) : json(nullptr)},
                {"rho", th.rho ? json(*th.rho) : json(nullptr)}}},
              {"tuning", {{"achieved_null_rate", report.tuning.achieved_rate}, {"kappa", report.tuning.kappa}}}};
  if (report.confirm_alt) rep["confirm_alternative"] = oc_json(*report.confirm_alt);
  if (report.confirm_null) rep["confirm_null"] = oc_json(*report.confirm_null);
  open_out((fs::path(dir) / "report.json").string()) << rep.dump(2) << '\n';

  log << "anchors n_a=" << report.n_a << " (power " << report.anchor_power_a << "), n_b=" << report.n_b
      << " (power " << report.anchor_power_b << ")\n";
  log << "recommended n=" << report.recommended << " stage sizes";
  for (long s : report.stage_sizes) log << ' ' << s;
  log << " extrapolated power " << report.extrapolated_power << "\n";
  if (report.confirm_alt)
    log << "confirmatory power " << report.confirm_alt->nu_rate << ", type I " << report.confirm_null->nu_rate
        << ", expected n " << report.confirm_alt->expected_n << " / " << report.confirm_null->expected_n << "\n";
  return report;
}

}  // namespace seqdesign::cli
