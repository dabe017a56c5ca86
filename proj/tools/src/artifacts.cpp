#include "seqdesign_cli/artifacts.hpp"

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "seqdesign/error.hpp"
#include "seqdesign/matrix_io.hpp"

namespace seqdesign::cli {

using nlohmann::json;

namespace {

std::uint64_t splitmix(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

const char* family_name(DeltaSampler::Family f) {
  switch (f) {
    case DeltaSampler::Family::fixed: return "fixed";
    case DeltaSampler::Family::uniform: return "uniform";
    case DeltaSampler::Family::normal: return "normal";
  }
  return "?";
}

}  // namespace

std::uint64_t simulation_seed(std::uint64_t base, ScenarioLabel label, long n) {
  return splitmix(splitmix(base ^ (label == ScenarioLabel::null ? 0x6e756c6cull : 0x616c74ull)) ^
                  static_cast<std::uint64_t>(n));
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  return h;
}

void save_matrix(const SummaryMatrix& m, const std::string& prefix, const std::string& model_description) {
  const std::filesystem::path p(prefix);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  write_matrix_csv(m, prefix + ".csv");
  const bool inner = m.has_inner();
  if (inner) write_inner_bin(m, prefix + ".inner.bin");
  json meta = {
      {"format", "seqdesign-matrix/1"},
      {"model", model_description},
      {"n", m.schedule.n()},
      {"c", m.schedule.spacing()},
      {"stage_sizes", m.schedule.sizes()},
      {"replicates", m.replicates()},
      {"seed", m.seed},
      {"scenario",
       {{"label", label_name(m.scenario.label)},
        {"kind", kind_name(m.scenario.kind)},
        {"distribution", family_name(m.scenario.sampler.family)},
        {"a", m.scenario.sampler.a},
        {"b", m.scenario.sampler.b},
        {"descriptor", m.scenario.descriptor}}},
      {"tau_draws", m.tau_draws},
      {"pred_draws", m.pred_draws},
      {"pred_gamma", m.pred_gamma},
      {"has_tau_P", m.has_tau_P()},
      {"inner", inner ? json(p.filename().string() + ".inner.bin") : json(nullptr)},
  };
  std::ofstream os(prefix + ".json");
  if (!os) throw Error("cannot write " + prefix + ".json");
  os << meta.dump(2) << '\n';
}

bool matrix_exists(const std::string& prefix) {
  return std::filesystem::exists(prefix + ".csv") && std::filesystem::exists(prefix + ".json");
}

SummaryMatrix load_matrix(const std::string& prefix) {
  std::ifstream is(prefix + ".json");
  if (!is) throw Error("cannot open " + prefix + ".json", ExitCode::usage);
  json meta;
  try {
    is >> meta;
  } catch (const json::exception& e) {
    throw ConfigError(prefix + ".json: " + e.what());
  }
  try {
    SummaryMatrix m;
    m.schedule = AnalysisSchedule(meta.at("c").get<std::vector<double>>(), meta.at("n").get<long>());
    m.seed = meta.at("seed").get<std::uint64_t>();
    const json& sc = meta.at("scenario");
    m.scenario.label = sc.at("label").get<std::string>() == "null" ? ScenarioLabel::null : ScenarioLabel::alternative;
    m.scenario.kind =
        sc.at("kind").get<std::string>() == "predictive" ? ScenarioKind::predictive : ScenarioKind::conditional;
    const std::string fam = sc.at("distribution").get<std::string>();
    m.scenario.sampler.family = fam == "uniform"  ? DeltaSampler::Family::uniform
                                : fam == "normal" ? DeltaSampler::Family::normal
                                                  : DeltaSampler::Family::fixed;
    m.scenario.sampler.a = sc.at("a").get<double>();
    m.scenario.sampler.b = sc.at("b").get<double>();
    m.scenario.descriptor = sc.at("descriptor").get<std::string>();
    m.tau_draws = meta.at("tau_draws").get<std::size_t>();
    m.pred_draws = meta.at("pred_draws").get<std::size_t>();
    m.pred_gamma = meta.at("pred_gamma").get<double>();
    m.rows = read_matrix_csv(prefix + ".csv", m.stages());
    if (m.rows.size() != meta.at("replicates").get<std::size_t>())
      throw ConfigError(prefix + ".csv: row count disagrees with the sidecar");
    if (!meta.at("inner").is_null()) {
      const std::filesystem::path dir = std::filesystem::path(prefix).parent_path();
      m.inner = read_inner_bin((dir / meta.at("inner").get<std::string>()).string());
    }
    m.validate();
    return m;
  } catch (const json::exception& e) {
    throw ConfigError(prefix + ".json: " + e.what());
  } catch (const ContractViolation& e) {
    throw ConfigError(prefix + ": " + e.what());
  }
}

void write_oc_csv(std::ostream& os, const OCReport& oc, const std::vector<long>& sizes, bool header) {
  if (header) os << "scenario,n,stage,n_t,cum_success,cum_failure,se_success,se_failure,nu_rate,expected_n\n";
  for (std::size_t t = 0; t < oc.cum_success.size(); ++t) {
    os << oc.scenario << ',' << oc.n << ',' << (t + 1) << ',' << sizes.at(t) << ','
       << format_double(oc.cum_success[t]) << ',' << format_double(oc.cum_failure[t]) << ','
       << format_double(oc.se_success[t]) << ',' << format_double(oc.se_failure[t]) << ','
       << format_double(oc.nu_rate) << ',' << format_double(oc.expected_n) << '\n';
  }
}

void write_bands_csv(std::ostream& os, const std::vector<BandRow>& bands) {
  os << "n,stage,kind,estimate,lo,hi\n";
  auto line = [&](long n, const std::string& stage, const char* kind, const Band& b) {
    os << n << ',' << stage << ',' << kind << ',' << format_double(b.estimate) << ',' << format_double(b.lo) << ','
       << format_double(b.hi) << '\n';
  };
  for (const auto& row : bands) {
    for (std::size_t t = 0; t < row.success.size(); ++t) line(row.n, std::to_string(t + 1), "success", row.success[t]);
    for (std::size_t t = 0; t < row.failure.size(); ++t) line(row.n, std::to_string(t + 1), "failure", row.failure[t]);
    line(row.n, "all", "nu", row.nu);
  }
}

}  // namespace seqdesign::cli
