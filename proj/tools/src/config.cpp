#include "seqdesign_cli/config.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <toml.hpp>

#include "seqdesign/error.hpp"

namespace seqdesign::cli {

namespace {

std::string where(const std::string& source, const toml::source_region& r) {
  return source + ":" + std::to_string(r.begin.line) + ":" + std::to_string(r.begin.column);
}

// Typed access to one table that remembers which keys were consumed.
class Section {
 public:
  Section(const toml::table* t, std::string path, const std::string* source)
      : t_(t), path_(std::move(path)), source_(source) {}

  bool present() const { return t_ != nullptr; }
  bool has(const std::string& k) const { return t_ && t_->contains(k); }

  const toml::node* node(const std::string& k) {
    if (!t_) return nullptr;
    const toml::node* n = t_->get(k);
    if (n) used_.insert(k);
    return n;
  }

  [[noreturn]] void fail(const std::string& k, const std::string& msg) const {
    std::string loc = *source_;
    if (t_) {
      if (const toml::node* n = t_->get(k)) loc = where(*source_, n->source());
      else loc = where(*source_, t_->source());
    }
    throw ConfigError(loc + ": " + qualified(k) + ": " + msg);
  }

  std::optional<double> opt_real(const std::string& k) {
    const toml::node* n = node(k);
    if (!n) return std::nullopt;
    if (auto v = n->value<double>()) return *v;
    if (auto s = n->value<std::string>()) {
      if (*s == "inf" || *s == "+inf") return kInf;
      if (*s == "-inf") return -kInf;
    }
    fail(k, "expected a number");
  }
  double real(const std::string& k, double def) { return opt_real(k).value_or(def); }
  double required_real(const std::string& k) {
    auto v = opt_real(k);
    if (!v) fail(k, "missing required value");
    return *v;
  }

  std::optional<long> opt_integer(const std::string& k, long min) {
    const toml::node* n = node(k);
    if (!n) return std::nullopt;
    if (!n->is_integer()) fail(k, "expected an integer");
    const long v = static_cast<long>(n->as_integer()->get());
    if (v < min) fail(k, "must be >= " + std::to_string(min));
    return v;
  }
  long integer(const std::string& k, long def, long min) { return opt_integer(k, min).value_or(def); }

  bool boolean(const std::string& k, bool def) {
    const toml::node* n = node(k);
    if (!n) return def;
    if (!n->is_boolean()) fail(k, "expected true or false");
    return n->as_boolean()->get();
  }

  std::optional<std::string> opt_string(const std::string& k) {
    const toml::node* n = node(k);
    if (!n) return std::nullopt;
    if (!n->is_string()) fail(k, "expected a string");
    return n->as_string()->get();
  }

  std::optional<std::vector<double>> opt_array(const std::string& k) {
    const toml::node* n = node(k);
    if (!n) return std::nullopt;
    const toml::array* a = n->as_array();
    if (!a) fail(k, "expected an array of numbers");
    std::vector<double> out;
    for (const auto& e : *a) {
      auto v = e.value<double>();
      if (!v) fail(k, "expected an array of numbers");
      out.push_back(*v);
    }
    return out;
  }

  Section sub(const std::string& k) {
    const toml::node* n = node(k);
    if (!n) return Section(nullptr, qualified(k), source_);
    if (!n->is_table()) fail(k, "expected a table");
    return Section(n->as_table(), qualified(k), source_);
  }

  // Unknown-key check; every section must end with this.
  void finish() const {
    if (!t_) return;
    for (const auto& [key, val] : *t_) {
      const std::string k(key.str());
      if (!used_.count(k))
        throw ConfigError(where(*source_, val.source()) + ": unknown key " + qualified(k));
    }
  }

  std::string qualified(const std::string& k) const { return path_.empty() ? k : path_ + "." + k; }

 private:
  const toml::table* t_;
  std::string path_;
  const std::string* source_;
  std::set<std::string> used_;
};

template <class E>
E choose(Section& s, const std::string& key, E def, std::initializer_list<std::pair<const char*, E>> opts) {
  auto v = s.opt_string(key);
  if (!v) return def;
  std::string names;
  for (const auto& [name, e] : opts) {
    if (*v == name) return e;
    names += names.empty() ? name : std::string(", ") + name;
  }
  s.fail(key, "unknown value '" + *v + "' (expected one of " + names + ")");
}

void parse_mcmc(Section s, MCMCSettings& m) {
  m.burnin = static_cast<int>(s.integer("burnin", m.burnin, 0));
  m.retained = static_cast<int>(s.integer("retained", m.retained, 1));
  m.chains = static_cast<int>(s.integer("chains", m.chains, 1));
  m.target_acceptance = s.real("target_acceptance", m.target_acceptance);
  m.adaptation = s.boolean("adaptation", m.adaptation);
  s.finish();
  try {
    m.validate();
  } catch (const Error& e) {
    throw ConfigError(s.qualified("") + " " + e.what());
  }
}

Scenario parse_scenario(Section s, ScenarioLabel label) {
  Scenario sc;
  sc.label = label;
  if (!s.present()) s.fail("", "missing scenario table");
  sc.kind = choose(s, "kind", ScenarioKind::conditional,
                   {{"conditional", ScenarioKind::conditional}, {"predictive", ScenarioKind::predictive}});
  const auto fam = choose(s, "distribution", DeltaSampler::Family::fixed,
                          {{"fixed", DeltaSampler::Family::fixed},
                           {"uniform", DeltaSampler::Family::uniform},
                           {"normal", DeltaSampler::Family::normal}});
  switch (fam) {
    case DeltaSampler::Family::fixed: sc.sampler = DeltaSampler::fixed(s.required_real("delta")); break;
    case DeltaSampler::Family::uniform:
      sc.sampler = DeltaSampler::uniform(s.required_real("lower"), s.required_real("upper"));
      break;
    case DeltaSampler::Family::normal:
      sc.sampler = DeltaSampler::normal(s.required_real("mean"), s.required_real("sd"));
      break;
  }
  sc.descriptor = s.opt_string("descriptor").value_or("");
  s.finish();
  try {
    sc.validate();
  } catch (const Error& e) {
    s.fail("kind", e.what());
  }
  return sc;
}

}  // namespace

unsigned env_workers(unsigned fallback) {
  if (const char* v = std::getenv("SEQDESIGN_WORKERS")) {
    char* end = nullptr;
    const long w = std::strtol(v, &end, 10);
    if (end == v || *end != '\0' || w < 1) throw ConfigError("SEQDESIGN_WORKERS must be a positive integer");
    return static_cast<unsigned>(w);
  }
  return fallback;
}

std::uint64_t env_seed(std::uint64_t fallback) {
  if (const char* v = std::getenv("SEQDESIGN_SEED")) {
    char* end = nullptr;
    const unsigned long long s = std::strtoull(v, &end, 10);
    if (end == v || *end != '\0') throw ConfigError("SEQDESIGN_SEED must be a non-negative integer");
    return s;
  }
  return fallback;
}

DesignConfig parse_config(const std::string& text, const std::string& source) {
  toml::table root;
  try {
    root = toml::parse(text, source);
  } catch (const toml::parse_error& e) {
    throw ConfigError(where(source, e.source()) + ": " + std::string(e.description()));
  }
  DesignConfig cfg;
  Section top(&root, "", &source);

  {
    Section s = top.sub("model");
    if (!s.present()) top.fail("model", "missing [model] table");
    ModelConfig& m = cfg.model;
    m.name = s.opt_string("name").value_or("");
    if (m.name == "normal") {
      m.normal.sigma = s.real("sigma", m.normal.sigma);
      m.normal.prior_mean = s.real("prior_mean", m.normal.prior_mean);
      m.normal.prior_sd = s.real("prior_sd", m.normal.prior_sd);
      m.normal.closed_form = s.boolean("closed_form", m.normal.closed_form);
      if (!(m.normal.sigma > 0.0)) s.fail("sigma", "must be positive");
      if (!(m.normal.prior_sd > 0.0)) s.fail("prior_sd", "must be positive");
    } else if (m.name == "beta_quantile") {
      BetaQuantileParams& b = m.beta;
      b.q = s.real("q", b.q);
      b.scenario_alpha = s.real("scenario_alpha", b.scenario_alpha);
      b.log_alpha_min = s.real("log_alpha_min", b.log_alpha_min);
      b.log_alpha_max = s.real("log_alpha_max", b.log_alpha_max);
      b.log_beta_min = s.real("log_beta_min", b.log_beta_min);
      b.log_beta_max = s.real("log_beta_max", b.log_beta_max);
      if (!(b.q > 0.0 && b.q < 1.0)) s.fail("q", "must lie in (0, 1)");
      if (!(b.scenario_alpha > 0.0)) s.fail("scenario_alpha", "must be positive");
      if (!(b.log_alpha_min < b.log_alpha_max)) s.fail("log_alpha_max", "box is empty");
      if (!(b.log_beta_min < b.log_beta_max)) s.fail("log_beta_max", "box is empty");
    } else if (m.name == "survival") {
      SurvivalParams& p = m.survival;
      p.admin_censor_time = s.real("admin_censor_time", p.admin_censor_time);
      p.control_rate = s.real("control_rate", p.control_rate);
      p.dropout_prob = s.real("dropout_prob", p.dropout_prob);
      p.prior_mean = s.real("prior_mean", p.prior_mean);
      p.prior_sd = s.real("prior_sd", p.prior_sd);
      m.admin_fraction = s.opt_real("admin_fraction");
      m.dropout_fraction = s.opt_real("dropout_fraction");
      if (m.admin_fraction.has_value() != m.dropout_fraction.has_value())
        s.fail("admin_fraction", "admin_fraction and dropout_fraction go together");
      if (m.admin_fraction && (s.has("control_rate") || s.has("dropout_prob")))
        s.fail("admin_fraction", "give either target fractions or control_rate/dropout_prob");
      if (!(p.admin_censor_time > 0.0)) s.fail("admin_censor_time", "must be positive");
      if (!(p.control_rate > 0.0)) s.fail("control_rate", "must be positive");
      if (!(p.dropout_prob >= 0.0 && p.dropout_prob <= 1.0)) s.fail("dropout_prob", "must lie in [0, 1]");
    } else {
      s.fail("name", "unknown model '" + m.name + "' (expected normal, beta_quantile or survival)");
    }
    s.finish();
  }

  {
    Section s = top.sub("hypothesis");
    if (!s.present()) top.fail("hypothesis", "missing [hypothesis] table");
    const double lo = s.real("lower", -kInf), hi = s.real("upper", kInf);
    try {
      cfg.hyp = Hypothesis(lo, hi);
    } catch (const Error& e) {
      s.fail("lower", e.what());
    }
    s.finish();
  }

  {
    Section s = top.sub("schedule");
    auto c = s.opt_array("c");
    if (!c) s.fail("c", "missing spacing constants");
    try {
      AnalysisSchedule check(*c, 1);
    } catch (const Error& e) {
      s.fail("c", e.what());
    }
    cfg.c = *c;
    s.finish();
  }

  {
    Section s = top.sub("criteria");
    cfg.Gamma0 = s.real("Gamma0", cfg.Gamma0);
    cfg.Gamma1 = s.real("Gamma1", cfg.Gamma1);
    cfg.replicates = static_cast<std::size_t>(s.integer("replicates", static_cast<long>(cfg.replicates), 1));
    cfg.inner_replicates =
        static_cast<std::size_t>(s.integer("inner_replicates", static_cast<long>(cfg.inner_replicates), 1));
    const bool allow = s.boolean("allow_gamma0_above_gamma1", false);
    if (!(cfg.Gamma0 >= 0.0 && cfg.Gamma0 <= 1.0)) s.fail("Gamma0", "must lie in [0, 1]");
    if (!(cfg.Gamma1 >= 0.0 && cfg.Gamma1 <= 1.0)) s.fail("Gamma1", "must lie in [0, 1]");
    if (!allow && cfg.Gamma0 >= cfg.Gamma1) s.fail("Gamma0", "must be below Gamma1");
    if (cfg.inner_replicates > 65535) s.fail("inner_replicates", "must be <= 65535");
    s.finish();
  }

  parse_mcmc(top.sub("mcmc"), cfg.mcmc);
  cfg.inner_mcmc = cfg.mcmc;
  parse_mcmc(top.sub("inner_mcmc"), cfg.inner_mcmc);

  {
    Section s = top.sub("scenario");
    if (!s.present()) top.fail("scenario", "missing [scenario.null] and [scenario.alternative]");
    cfg.null_scenario = parse_scenario(s.sub("null"), ScenarioLabel::null);
    cfg.alt_scenario = parse_scenario(s.sub("alternative"), ScenarioLabel::alternative);
    s.finish();
  }

  const std::size_t T = cfg.c.size();
  {
    Section s = top.sub("thresholds");
    ThresholdConfig& t = cfg.thresholds;
    if (s.has("gamma")) {
      const toml::node* n = s.node("gamma");
      if (auto str = n->value<std::string>(); !(str && *str == "auto")) t.gamma = s.opt_array("gamma");
    }
    t.xi = s.opt_array("xi");
    t.eta = s.opt_array("eta");
    t.rho = s.opt_array("rho");
    t.strategy = choose(s, "strategy", TuneStrategy::final_gamma,
                        {{"final-gamma", TuneStrategy::final_gamma},
                         {"proportional", TuneStrategy::proportional},
                         {"fixed", TuneStrategy::fixed}});
    if (t.strategy == TuneStrategy::fixed && !t.gamma) s.fail("strategy", "fixed thresholds need gamma values");
    ThresholdSet probe;
    probe.gamma = t.gamma.value_or(std::vector<double>(T, 0.5));
    probe.xi = t.xi;
    probe.eta = t.eta;
    probe.rho = t.rho;
    try {
      probe.validate(T);
    } catch (const Error& e) {
      s.fail("gamma", e.what());
    }
    s.finish();
  }

  {
    Section s = top.sub("policy");
    const std::string order = choose<std::string>(s, "order", "success-first",
                                                  {{"success-first", "success-first"},
                                                   {"failure-first", "failure-first"}});
    cfg.success_first = order == "success-first";
    s.finish();
  }

  {
    Section s = top.sub("anchors");
    cfg.n_a = s.integer("n_a", cfg.n_a, 1);
    if (auto b = s.opt_integer("n_b", 1)) cfg.n_b = *b;
    if (cfg.n_b && *cfg.n_b == cfg.n_a) s.fail("n_b", "must differ from n_a");
    cfg.n_min = s.integer("n_min", cfg.n_min, 1);
    cfg.n_max = s.integer("n_max", cfg.n_max, 1);
    if (cfg.n_max < cfg.n_min) s.fail("n_max", "must be >= n_min");
    s.finish();
  }

  {
    Section s = top.sub("design");
    cfg.subgroups = static_cast<std::size_t>(s.integer("subgroups", 1, 1));
    cfg.pairing = choose(s, "pairing", PairingMode::per_summary,
                         {{"per-summary", PairingMode::per_summary}, {"stage1-rank", PairingMode::stage1_rank}});
    cfg.bandwidth = choose(s, "bandwidth", Bandwidth::silverman,
                           {{"silverman", Bandwidth::silverman}, {"scott", Bandwidth::scott}});
    cfg.confirm = s.boolean("confirm", false);
    cfg.bootstrap = static_cast<std::size_t>(s.integer("bootstrap", 0, 0));
    if (cfg.bootstrap != 0 && cfg.bootstrap < 100) s.fail("bootstrap", "needs at least 100 resamples");
    cfg.bootstrap_level = s.real("bootstrap_level", cfg.bootstrap_level);
    if (!(cfg.bootstrap_level > 0.0 && cfg.bootstrap_level < 1.0)) s.fail("bootstrap_level", "must lie in (0, 1)");
    cfg.spending_paths = static_cast<std::size_t>(s.integer("spending_paths", 1000000, 1000));
    if (cfg.subgroups > 1 && cfg.alt_scenario.kind != ScenarioKind::predictive)
      s.fail("subgroups", "subgroups need a predictive alternative scenario");
    s.finish();
  }

  {
    Section s = top.sub("run");
    if (auto v = s.opt_integer("seed", 0)) cfg.seed = static_cast<std::uint64_t>(*v);
    else cfg.seed = env_seed(cfg.seed);
    if (auto v = s.opt_integer("workers", 1)) cfg.workers = static_cast<unsigned>(*v);
    else cfg.workers = env_workers(cfg.workers);
    s.finish();
  }

  top.finish();
  return cfg;
}

DesignConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config " + path, ExitCode::usage);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

namespace {

toml::array to_array(const std::vector<double>& v) {
  toml::array a;
  for (double x : v) a.push_back(x);
  return a;
}

toml::table mcmc_table(const MCMCSettings& m) {
  return toml::table{{"burnin", m.burnin},
                     {"retained", m.retained},
                     {"chains", m.chains},
                     {"target_acceptance", m.target_acceptance},
                     {"adaptation", m.adaptation}};
}

toml::table scenario_table(const Scenario& s) {
  toml::table t{{"kind", kind_name(s.kind)}};
  switch (s.sampler.family) {
    case DeltaSampler::Family::fixed: t.insert("delta", s.sampler.a); break;
    case DeltaSampler::Family::uniform:
      t.insert("distribution", "uniform");
      t.insert("lower", s.sampler.a);
      t.insert("upper", s.sampler.b);
      break;
    case DeltaSampler::Family::normal:
      t.insert("distribution", "normal");
      t.insert("mean", s.sampler.a);
      t.insert("sd", s.sampler.b);
      break;
  }
  if (!s.descriptor.empty()) t.insert("descriptor", s.descriptor);
  return t;
}

}  // namespace

std::string strategy_name(TuneStrategy s) {
  switch (s) {
    case TuneStrategy::final_gamma: return "final-gamma";
    case TuneStrategy::proportional: return "proportional";
    case TuneStrategy::fixed: return "fixed";
  }
  return "?";
}

std::string serialize_config(const DesignConfig& cfg) {
  toml::table root;
  toml::table model{{"name", cfg.model.name}};
  if (cfg.model.name == "normal") {
    model.insert("sigma", cfg.model.normal.sigma);
    model.insert("prior_mean", cfg.model.normal.prior_mean);
    model.insert("prior_sd", cfg.model.normal.prior_sd);
    model.insert("closed_form", cfg.model.normal.closed_form);
  } else if (cfg.model.name == "beta_quantile") {
    const auto& b = cfg.model.beta;
    model.insert("q", b.q);
    model.insert("scenario_alpha", b.scenario_alpha);
    model.insert("log_alpha_min", b.log_alpha_min);
    model.insert("log_alpha_max", b.log_alpha_max);
    model.insert("log_beta_min", b.log_beta_min);
    model.insert("log_beta_max", b.log_beta_max);
  } else {
    const auto& p = cfg.model.survival;
    model.insert("admin_censor_time", p.admin_censor_time);
    if (cfg.model.admin_fraction) {
      model.insert("admin_fraction", *cfg.model.admin_fraction);
      model.insert("dropout_fraction", *cfg.model.dropout_fraction);
    } else {
      model.insert("control_rate", p.control_rate);
      model.insert("dropout_prob", p.dropout_prob);
    }
    model.insert("prior_mean", p.prior_mean);
    model.insert("prior_sd", p.prior_sd);
  }
  root.insert("model", model);
  root.insert("hypothesis", toml::table{{"lower", cfg.hyp.lower()}, {"upper", cfg.hyp.upper()}});
  root.insert("schedule", toml::table{{"c", to_array(cfg.c)}});
  root.insert("criteria", toml::table{{"Gamma0", cfg.Gamma0},
                                      {"Gamma1", cfg.Gamma1},
                                      {"replicates", static_cast<std::int64_t>(cfg.replicates)},
                                      {"inner_replicates", static_cast<std::int64_t>(cfg.inner_replicates)},
                                      {"allow_gamma0_above_gamma1", cfg.Gamma0 >= cfg.Gamma1}});
  root.insert("mcmc", mcmc_table(cfg.mcmc));
  root.insert("inner_mcmc", mcmc_table(cfg.inner_mcmc));
  root.insert("scenario", toml::table{{"null", scenario_table(cfg.null_scenario)},
                                      {"alternative", scenario_table(cfg.alt_scenario)}});
  toml::table th{{"strategy", strategy_name(cfg.thresholds.strategy)}};
  if (cfg.thresholds.gamma) th.insert("gamma", to_array(*cfg.thresholds.gamma));
  else th.insert("gamma", "auto");
  if (cfg.thresholds.xi) th.insert("xi", to_array(*cfg.thresholds.xi));
  if (cfg.thresholds.eta) th.insert("eta", to_array(*cfg.thresholds.eta));
  if (cfg.thresholds.rho) th.insert("rho", to_array(*cfg.thresholds.rho));
  root.insert("thresholds", th);
  root.insert("policy", toml::table{{"order", cfg.success_first ? "success-first" : "failure-first"}});
  toml::table anchors{{"n_a", cfg.n_a}, {"n_min", cfg.n_min}, {"n_max", cfg.n_max}};
  if (cfg.n_b) anchors.insert("n_b", *cfg.n_b);
  root.insert("anchors", anchors);
  root.insert("design",
              toml::table{{"subgroups", static_cast<std::int64_t>(cfg.subgroups)},
                          {"pairing", cfg.pairing == PairingMode::per_summary ? "per-summary" : "stage1-rank"},
                          {"bandwidth", cfg.bandwidth == Bandwidth::silverman ? "silverman" : "scott"},
                          {"confirm", cfg.confirm},
                          {"bootstrap", static_cast<std::int64_t>(cfg.bootstrap)},
                          {"bootstrap_level", cfg.bootstrap_level},
                          {"spending_paths", static_cast<std::int64_t>(cfg.spending_paths)}});
  root.insert("run", toml::table{{"seed", static_cast<std::int64_t>(cfg.seed)},
                                 {"workers", static_cast<std::int64_t>(cfg.workers)}});
  std::ostringstream os;
  os << root << '\n';
  return os.str();
}

ModelPtr build_model(const ModelConfig& m) {
  if (m.name == "normal") return std::make_shared<NormalModel>(m.normal);
  if (m.name == "beta_quantile") return beta_quantile_model(m.beta);
  if (m.name == "survival") {
    SurvivalParams p = m.survival;
    if (m.admin_fraction) {
      const SurvivalCalibration cal = calibrate_survival(p.admin_censor_time, *m.admin_fraction, *m.dropout_fraction);
      p.control_rate = cal.control_rate;
      p.dropout_prob = cal.dropout_prob;
    }
    return std::make_shared<SurvivalModel>(p);
  }
  throw ConfigError("unknown model " + m.name);
}

const Scenario& scenario_by_name(const DesignConfig& cfg, const std::string& name) {
  if (name == "null") return cfg.null_scenario;
  if (name == "alternative" || name == "alt") return cfg.alt_scenario;
  throw Error("unknown scenario '" + name + "' (expected null or alternative)", ExitCode::usage);
}

ThresholdSet initial_thresholds(const DesignConfig& cfg) {
  const std::size_t T = cfg.c.size();
  ThresholdSet th;
  if (cfg.thresholds.gamma) {
    th.gamma = *cfg.thresholds.gamma;
  } else {
    SpendingCalibration cal;
    cal.paths = cfg.spending_paths;
    const bool with_final = cfg.thresholds.strategy == TuneStrategy::proportional;
    th.gamma = obf_initial_gammas(cfg.Gamma0, cfg.c, with_final, cal);
    if (!with_final) th.gamma.push_back(1.0);
  }
  th.xi = cfg.thresholds.xi;
  th.eta = cfg.thresholds.eta;
  th.rho = cfg.thresholds.rho;
  th.validate(T);
  return th;
}

StoppingPolicy policy_for(const DesignConfig& cfg, const ThresholdSet& th) {
  return StoppingPolicy::standard(cfg.c.size(), th, cfg.success_first);
}

RunPlan run_plan(const DesignConfig& cfg, const Scenario& scenario, long n, std::uint64_t seed, double pred_gamma) {
  RunPlan p;
  p.model = build_model(cfg.model);
  p.scenario = scenario;
  p.hyp = cfg.hyp;
  p.schedule = AnalysisSchedule(cfg.c, n);
  p.replicates = cfg.replicates;
  p.inner_replicates = cfg.inner_replicates;
  p.mcmc = cfg.mcmc;
  p.inner_mcmc = cfg.inner_mcmc;
  p.base_seed = seed;
  p.compute_tau_P = cfg.c.size() > 1 && (cfg.thresholds.eta || cfg.thresholds.rho);
  p.gamma_T_for_pred = pred_gamma;
  p.store_inner = p.compute_tau_P;
  p.bandwidth = cfg.bandwidth;
  return p;
}

std::string serialize_thresholds(const ThresholdSet& th, const std::vector<std::string>& audit) {
  toml::table t{{"gamma", to_array(th.gamma)}};
  if (th.xi) t.insert("xi", to_array(*th.xi));
  if (th.eta) t.insert("eta", to_array(*th.eta));
  if (th.rho) t.insert("rho", to_array(*th.rho));
  std::ostringstream os;
  for (const auto& line : audit) os << "# " << line << '\n';
  os << toml::table{{"thresholds", t}} << '\n';
  return os.str();
}

ThresholdSet parse_thresholds(const std::string& text, const std::string& source) {
  toml::table root;
  try {
    root = toml::parse(text, source);
  } catch (const toml::parse_error& e) {
    throw ConfigError(where(source, e.source()) + ": " + std::string(e.description()));
  }
  Section top(&root, "", &source);
  Section s = top.sub("thresholds");
  ThresholdSet th;
  auto g = s.opt_array("gamma");
  if (!g) s.fail("gamma", "missing gamma thresholds");
  th.gamma = *g;
  th.xi = s.opt_array("xi");
  th.eta = s.opt_array("eta");
  th.rho = s.opt_array("rho");
  s.finish();
  top.finish();
  return th;
}

ThresholdSet load_thresholds(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open thresholds file " + path, ExitCode::usage);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_thresholds(ss.str(), path);
}

}  // namespace seqdesign::cli
