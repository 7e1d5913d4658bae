#include "oscspec/config.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "oscspec/error.hpp"

namespace oscspec {

using nlohmann::json;

namespace {

constexpr std::pair<ExperimentKind, const char*> kExperimentNames[] = {
    {ExperimentKind::spectrum_scan, "spectrum-scan"},
    {ExperimentKind::szego_scan, "szego-scan"},
    {ExperimentKind::hardy_suite, "hardy-suite"},
    {ExperimentKind::sharpness_search, "sharpness-search"},
    {ExperimentKind::coupling_scan, "coupling-scan"},
    {ExperimentKind::verify_inequalities, "verify-inequalities"},
};

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::config_parse, what); }

void reject_unknown(const json& object, std::initializer_list<const char*> known, const std::string& where) {
  for (const auto& [key, value] : object.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) parse_error("unknown key \"" + key + "\" in " + where);
  }
}

template <class T>
void read(const json& object, const char* key, T& out, const std::string& where) {
  if (!object.contains(key)) return;
  try {
    out = object.at(key).get<T>();
  } catch (const json::exception&) {
    parse_error("bad value for \"" + std::string(key) + "\" in " + where);
  }
}

FamilySpec parse_family(const json& j) {
  if (!j.is_object()) parse_error("family must be an object");
  reject_unknown(j, {"kind", "alpha", "beta", "gamma", "eta", "table_path"}, "family");
  FamilySpec f;
  std::string kind = "free";
  read(j, "kind", kind, "family");
  const auto parsed = family_kind_from_string(kind);
  if (!parsed) parse_error("unknown family kind \"" + kind + "\"");
  f.kind = *parsed;
  read(j, "alpha", f.alpha, "family");
  read(j, "beta", f.beta, "family");
  read(j, "gamma", f.gamma, "family");
  read(j, "eta", f.eta, "family");
  read(j, "table_path", f.table_path, "family");
  return f;
}

PotentialSpec parse_potential(const json& j) {
  if (!j.is_object()) parse_error("potential must be an object");
  reject_unknown(j, {"kind", "exponent", "gamma", "x0", "coefficient", "steps"}, "potential");
  PotentialSpec p;
  std::string kind = "table";
  read(j, "kind", kind, "potential");
  const auto parsed = potential_kind_from_string(kind);
  if (!parsed || *parsed == PotentialKind::composite) parse_error("unsupported potential kind \"" + kind + "\"");
  p.kind = *parsed;
  read(j, "exponent", p.exponent, "potential");
  read(j, "gamma", p.gamma, "potential");
  read(j, "x0", p.x0, "potential");
  read(j, "coefficient", p.coefficient, "potential");
  read(j, "steps", p.steps, "potential");
  return p;
}

GridSpec parse_grid(const json& j) {
  if (!j.is_object()) parse_error("grid must be an object");
  reject_unknown(j, {"sizes", "horizons", "lambdas", "ells", "log_L", "gamma_a", "gamma_b", "r_max", "trials"},
                 "grid");
  GridSpec g;
  read(j, "sizes", g.sizes, "grid");
  read(j, "horizons", g.horizons, "grid");
  read(j, "lambdas", g.lambdas, "grid");
  read(j, "ells", g.ells, "grid");
  read(j, "log_L", g.log_Ls, "grid");
  read(j, "gamma_a", g.gamma_a, "grid");
  read(j, "gamma_b", g.gamma_b, "grid");
  read(j, "r_max", g.r_max, "grid");
  read(j, "trials", g.trials, "grid");
  return g;
}

}  // namespace

const char* to_string(ExperimentKind kind) noexcept {
  for (const auto& [k, name] : kExperimentNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::optional<ExperimentKind> experiment_kind_from_string(const std::string& name) {
  for (const auto& [k, label] : kExperimentNames) {
    if (name == label) return k;
  }
  return std::nullopt;
}

CoefficientSequence FamilySpec::to_sequence() const {
  CoefficientSequence seq;
  seq.kind = kind;
  seq.alpha = alpha;
  seq.beta = beta;
  seq.gamma = kind == FamilyKind::inverse_square ? 2.0 : gamma;
  seq.eta = eta;
  if (!table_path.empty()) seq.table = read_coefficient_table(table_path);
  return seq;
}

Potential1D PotentialSpec::to_potential() const {
  switch (kind) {
    case PotentialKind::sin_over_power: return Potential1D::sin_over_power(exponent);
    case PotentialKind::sin_over_r_alpha: return Potential1D::sin_over_r_alpha(exponent);
    case PotentialKind::inverse_square: return Potential1D::inverse_square(gamma, x0);
    case PotentialKind::x_gamma: return Potential1D::x_gamma(gamma, x0);
    case PotentialKind::power: return Potential1D::power(coefficient, exponent);
    case PotentialKind::table: {
      std::vector<PotentialStep> s;
      for (const auto& [start, value] : steps) s.push_back({start, value});
      return Potential1D::table(std::move(s));
    }
    case PotentialKind::composite: break;
  }
  throw Error(ErrorCode::invalid_parameters, "composite potentials are built by divergence_split");
}

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> defaults{
      {"atol", 1e-12},                  // eigenvalue bisection width and band-edge offset
      {"decompose_tol", 1e-14},         // tail acceleration accuracy
      {"quad_nodes", 8192},             // Szego midpoint nodes
      {"szego_shrink_factor", 1.0},     // convergent when |dZ| shrinks by more than this per doubling
      {"szego_divergence_delta", 0.02}, // divergent when Z rises by at least this per doubling
      {"margin", 10},                   // interior margin for form_gap
      {"form_gap_tol", 1e-10},          // form_gap must be >= -form_gap_tol
      {"sbp_slack", 1e-12},             // rhs - lhs >= -sbp_slack
      {"hardy_slack", 1e-12},           // rhs - lhs >= -hardy_slack
      {"prufer_rtol", 1e-9},            // local phase error per step
      {"r_max_exponent", 0.0},          // r_max = lambda^e; 0 selects 2/beta
      {"r_max_floor", 10.0},
  };
  return defaults;
}

double ExperimentConfig::tolerance(const std::string& name) const {
  auto it = tolerances.find(name);
  if (it == tolerances.end()) throw Error(ErrorCode::config_parse, "no tolerance named " + name);
  return it->second;
}

ExperimentConfig parse_config(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& err) {
    parse_error(std::string("malformed JSON: ") + err.what());
  }
  if (!j.is_object()) parse_error("config must be a JSON object");
  reject_unknown(j, {"experiment", "family", "potential", "grid", "tolerances", "seed", "output_path"}, "config");

  ExperimentConfig config;
  if (!j.contains("experiment")) parse_error("missing \"experiment\"");
  std::string name;
  read(j, "experiment", name, "config");
  const auto kind = experiment_kind_from_string(name);
  if (!kind) parse_error("unknown experiment \"" + name + "\"");
  config.experiment = *kind;

  if (j.contains("family")) config.family = parse_family(j.at("family"));
  if (j.contains("potential")) config.potential = parse_potential(j.at("potential"));
  if (j.contains("grid")) config.grid = parse_grid(j.at("grid"));
  if (j.contains("tolerances")) {
    const auto& t = j.at("tolerances");
    if (!t.is_object()) parse_error("tolerances must be an object");
    for (const auto& [key, value] : t.items()) {
      if (!config.tolerances.contains(key)) parse_error("unknown tolerance \"" + key + "\"");
      if (!value.is_number()) parse_error("tolerance \"" + key + "\" must be a number");
      config.tolerances[key] = value.get<double>();
    }
  }
  read(j, "seed", config.seed, "config");
  read(j, "output_path", config.output_path, "config");
  return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::config_parse, "cannot open config " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string serialize(const ExperimentConfig& c) {
  json j;
  j["experiment"] = to_string(c.experiment);
  if (c.family) {
    j["family"] = {{"kind", to_string(c.family->kind)}, {"alpha", c.family->alpha}, {"beta", c.family->beta},
                   {"gamma", c.family->gamma},          {"eta", c.family->eta},     {"table_path", c.family->table_path}};
  }
  if (c.potential) {
    j["potential"] = {{"kind", to_string(c.potential->kind)}, {"exponent", c.potential->exponent},
                      {"gamma", c.potential->gamma},          {"x0", c.potential->x0},
                      {"coefficient", c.potential->coefficient}, {"steps", c.potential->steps}};
  }
  j["grid"] = {{"sizes", c.grid.sizes},     {"horizons", c.grid.horizons}, {"lambdas", c.grid.lambdas},
               {"ells", c.grid.ells},       {"log_L", c.grid.log_Ls},      {"gamma_a", c.grid.gamma_a},
               {"gamma_b", c.grid.gamma_b}, {"r_max", c.grid.r_max},       {"trials", c.grid.trials}};
  j["tolerances"] = c.tolerances;
  j["seed"] = c.seed;
  j["output_path"] = c.output_path;
  return j.dump(2);
}

}  // namespace oscspec
