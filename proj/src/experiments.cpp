#include "oscspec/experiments.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <random>

#include "oscspec/continuum.hpp"
#include "oscspec/csv.hpp"
#include "oscspec/error.hpp"
#include "oscspec/hardy.hpp"
#include "oscspec/operator.hpp"
#include "oscspec/spectrum.hpp"
#include "oscspec/szego.hpp"

namespace oscspec {

using nlohmann::json;

namespace {

struct Outcome {
  std::string verdict;
  json key_numbers = json::object();
  bool violated = false;
};

const FamilySpec& need_family(const ExperimentConfig& c) {
  if (!c.family) throw Error(ErrorCode::config_parse, std::string(to_string(c.experiment)) + " needs \"family\"");
  return *c.family;
}

const PotentialSpec& need_potential(const ExperimentConfig& c) {
  if (!c.potential) {
    throw Error(ErrorCode::config_parse, std::string(to_string(c.experiment)) + " needs \"potential\"");
  }
  return *c.potential;
}

template <class T>
std::vector<T> or_default(const std::vector<T>& given, std::vector<T> fallback) {
  return given.empty() ? fallback : given;
}

std::size_t as_size(std::int64_t n) {
  if (n < 0) throw Error(ErrorCode::config_parse, "sizes must be nonnegative");
  return static_cast<std::size_t>(n);
}

// ---------------------------------------------------------------------------

Outcome spectrum_scan_experiment(const ExperimentConfig& c, const std::filesystem::path& csv_path,
                                 unsigned threads) {
  const auto seq = need_family(c).to_sequence();
  std::vector<std::size_t> sizes;
  for (auto n : or_default(c.grid.sizes, {1000, 10000, 100000})) sizes.push_back(as_size(n));
  const auto scan = count_scan(seq, sizes, threads, c.tolerance("atol"));

  csv::Writer out(csv_path, {"n", "count_above", "count_below", "lt_half", "verdict"});
  for (const auto& row : scan.rows) {
    out.row({static_cast<std::int64_t>(row.n), static_cast<std::int64_t>(row.count_above),
             static_cast<std::int64_t>(row.count_below), row.lt_half, std::string(to_string(scan.verdict))});
  }
  Outcome o;
  o.verdict = to_string(scan.verdict);
  const auto& last = scan.rows.back();
  o.key_numbers = {{"n", last.n},
                   {"count_above", last.count_above},
                   {"count_below", last.count_below},
                   {"lt_half", last.lt_half}};
  return o;
}

Outcome szego_scan_experiment(const ExperimentConfig& c, const std::filesystem::path& csv_path, unsigned threads) {
  const auto seq = need_family(c).to_sequence();
  const auto horizons = or_default(c.grid.horizons, {1000, 2000, 4000, 8000, 16000});
  SzegoScanOptions options;
  options.quad_nodes = static_cast<int>(c.tolerance("quad_nodes"));
  options.shrink_factor = c.tolerance("szego_shrink_factor");
  options.divergence_delta = c.tolerance("szego_divergence_delta");
  const auto scan = szego_scan(seq, horizons, options, threads);

  csv::Writer out(csv_path, {"horizon", "M", "Z", "dZ", "edge_flag", "verdict"});
  for (std::size_t k = 0; k < scan.estimates.size(); ++k) {
    const auto& e = scan.estimates[k];
    csv::Field dz = std::monostate{};
    if (k > 0) dz = scan.dz[k - 1];
    out.row({e.horizon, static_cast<std::int64_t>(e.quad_nodes), e.z_value, dz,
             static_cast<std::int64_t>(e.edge_flag), std::string(to_string(scan.verdict))});
  }

  const auto hyp = check_hypotheses(seq, std::max<std::int64_t>(horizons.back(), 8));
  Outcome o;
  o.verdict = to_string(scan.verdict);
  o.key_numbers = {{"Z_last", scan.estimates.back().z_value},
                   {"dZ_last", scan.dz.empty() ? 0.0 : scan.dz.back()},
                   {"predicted", to_string(hyp.prediction)},
                   {"log_sum_bounded_below", to_string(hyp.limsup_bounded_below)},
                   {"square_sum", to_string(hyp.square_sum.verdict)},
                   {"summable_decomposition", hyp.summable_decomposition}};
  return o;
}

/// Uniform entries on a random window of the half-line.
std::vector<double> random_half_line_vector(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> offset(0, 1000);
  std::uniform_int_distribution<int> length(1, 200);
  std::uniform_real_distribution<double> entry(-1.0, 1.0);
  std::vector<double> u(static_cast<std::size_t>(offset(rng)), 0.0);
  const int len = length(rng);
  for (int k = 0; k < len; ++k) u.push_back(entry(rng));
  return u;
}

struct TrialSummary {
  double min_slack = INFINITY;
  std::int64_t failures = 0;
};

TrialSummary hardy_trials(std::int64_t trials, std::uint64_t seed, double slack) {
  std::mt19937_64 rng(seed);
  TrialSummary s;
  for (std::int64_t t = 0; t < trials; ++t) {
    const auto u = random_half_line_vector(rng);
    const auto check = hardy_check(u);
    const double margin = check.rhs - check.lhs;
    s.min_slack = std::min(s.min_slack, margin);
    s.failures += margin < -slack;
  }
  return s;
}

TrialSummary sbp_trials(std::int64_t trials, std::uint64_t seed, double slack) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_int_distribution<int> length(1, 60);
  std::uniform_real_distribution<double> entry(-1.0, 1.0);
  TrialSummary s;
  for (std::int64_t t = 0; t < trials; ++t) {
    const int m = length(rng);
    std::vector<double> u(static_cast<std::size_t>(m));
    std::vector<double> f(static_cast<std::size_t>(m) + 1);
    for (double& x : u) x = entry(rng);
    for (double& x : f) x = entry(rng);
    const auto check = sbp_bound_check(u, f);
    const double margin = check.rhs - check.lhs;
    s.min_slack = std::min(s.min_slack, margin);
    s.failures += margin < -slack;
  }
  return s;
}

Outcome hardy_suite_experiment(const ExperimentConfig& c, const std::filesystem::path& csv_path) {
  const auto sizes = or_default(c.grid.sizes, {1000, 10000, 100000});
  csv::Writer out(csv_path, {"N", "lhs", "rhs", "ratio", "min_ratio"});
  Outcome o;
  json ratios = json::array();
  for (auto N : sizes) {
    const auto u = near_optimizer(as_size(N));
    const auto check = hardy_check(u);
    const double min_ratio = hardy_min_ratio(as_size(N));
    out.row({N, check.lhs, check.rhs, check.rhs / check.lhs, min_ratio});
    ratios.push_back(check.rhs / check.lhs);
  }

  const auto trials = hardy_trials(c.grid.trials, c.seed, c.tolerance("hardy_slack"));
  std::int64_t band_failures = 0;
  const std::int64_t band_end = 1'000'000;
  for (std::int64_t n = 2; n <= band_end; ++n) {
    const double scaled = static_cast<double>(n) * n * std::abs(hardy_potential(n));
    const double upper = 0.25 + 0.25 / (static_cast<double>(n) * n);
    band_failures += !(scaled >= 0.25 && scaled <= upper);
  }
  o.violated = trials.failures > 0 || band_failures > 0;
  o.verdict = o.violated ? "violated" : "holds";
  o.key_numbers = {{"near_optimizer_ratios", ratios},
                   {"random_trials", c.grid.trials},
                   {"random_failures", trials.failures},
                   {"random_min_slack", trials.min_slack},
                   {"potential_band_failures", band_failures}};
  return o;
}

Outcome sharpness_experiment(const ExperimentConfig& c, const std::filesystem::path& csv_path, unsigned threads) {
  const auto ga = or_default(c.grid.gamma_a, {0.0, 0.05});
  const auto gb = or_default(c.grid.gamma_b, {1.25, 0.1});
  if (ga.size() != gb.size()) throw Error(ErrorCode::config_parse, "gamma_a and gamma_b must pair up");
  const auto ells = or_default(c.grid.ells, kDefaultSharpnessElls);
  const auto log_Ls = or_default(c.grid.log_Ls, kDefaultSharpnessLogLs);

  csv::Writer out(csv_path, {"gamma_a", "gamma_b", "ell", "log_L", "form"});
  Outcome o;
  bool consistent = true;
  json per_pair = json::array();
  for (std::size_t i = 0; i < ga.size(); ++i) {
    const auto points = sharpness_search(ga[i], gb[i], ells, log_Ls, threads);
    double min_form = INFINITY;
    for (const auto& p : points) {
      out.row({ga[i], gb[i], p.ell, p.log_L, p.value});
      min_form = std::min(min_form, p.value);
    }
    const double threshold = 2.0 * ga[i] + gb[i];
    if (threshold > 0.25) consistent = consistent && min_form < 0.0;
    if (threshold < 0.25) consistent = consistent && min_form > 0.0;
    per_pair.push_back({{"gamma_a", ga[i]}, {"gamma_b", gb[i]}, {"min_form", min_form}});
  }
  o.verdict = consistent ? "consistent" : "inconsistent";
  o.key_numbers = {{"pairs", per_pair}};
  return o;
}

Outcome coupling_experiment(const ExperimentConfig& c, const std::filesystem::path& csv_path, unsigned threads) {
  const auto V = need_potential(c).to_potential();
  const auto lambdas = or_default(c.grid.lambdas, {1e2, std::pow(10.0, 2.5), 1e3, std::pow(10.0, 3.5), 1e4});
  RMaxRule rule{c.tolerance("r_max_exponent"), c.tolerance("r_max_floor")};
  const auto scan = coupling_scan(V, lambdas, rule, c.tolerance("prufer_rtol"), threads);

  csv::Writer out(csv_path, {"lambda", "r_max", "zero_count", "final_theta", "tail_ok", "slope"});
  for (std::size_t i = 0; i < scan.rows.size(); ++i) {
    const auto& r = scan.rows[i];
    csv::Field slope = std::monostate{};
    if (i + 1 == scan.rows.size()) slope = scan.slope;
    out.row({r.lambda, r.r_max, r.zero_count, r.final_theta, static_cast<std::int64_t>(r.tail_bound_ok), slope});
  }
  Outcome o;
  o.verdict = "fitted";
  o.key_numbers = {{"slope", scan.slope}, {"largest_count", scan.rows.back().zero_count}};
  if (V.exponent() > 0.0) o.key_numbers["inverse_exponent"] = 1.0 / V.exponent();
  return o;
}

Outcome verify_experiment(const ExperimentConfig& c, const std::filesystem::path& csv_path) {
  csv::Writer out(csv_path, {"check", "parameter", "value", "bound", "status"});
  Outcome o;
  std::int64_t failures = 0;
  auto record = [&](const std::string& check, double parameter, double value, double bound, bool ok) {
    out.row({check, parameter, value, bound, std::string(ok ? "ok" : "violated")});
    failures += !ok;
  };

  const double gap_tol = c.tolerance("form_gap_tol");
  const auto margin = static_cast<std::size_t>(c.tolerance("margin"));
  if (c.family) {
    const auto seq = c.family->to_sequence();
    for (auto n64 : or_default(c.grid.sizes, {500})) {
      const std::size_t n = as_size(n64);
      const auto J = truncate(seq, n);
      const auto dec = decompose(seq, std::max<std::int64_t>(n64, 8), c.tolerance("decompose_tol"));
      const double gap = form_gap(J, potential_W(dec, n), margin);
      record("form_gap", static_cast<double>(n), gap, -gap_tol, gap >= -gap_tol);
      if (seq.alpha == 0.0 && seq.table.empty()) {
        const auto pair = comparison_operators(dec.f, n);
        const double comparison = form_gap(J, pair.plus.diag(), margin);
        record("comparison_gap", static_cast<double>(n), comparison, -gap_tol, comparison >= -gap_tol);
      }
    }
  }

  const auto sbp = sbp_trials(c.grid.trials, c.seed, c.tolerance("sbp_slack"));
  record("sbp_min_slack", static_cast<double>(c.grid.trials), sbp.min_slack, -c.tolerance("sbp_slack"),
         sbp.failures == 0);
  const auto hardy = hardy_trials(c.grid.trials, c.seed, c.tolerance("hardy_slack"));
  record("hardy_min_slack", static_cast<double>(c.grid.trials), hardy.min_slack, -c.tolerance("hardy_slack"),
         hardy.failures == 0);

  if (c.potential) {
    const auto V = c.potential->to_potential();
    const double rtol = c.tolerance("prufer_rtol");
    if (V.oscillatory()) {
      for (double lambda : or_default(c.grid.lambdas, {10.0, 100.0})) {
        const double R = std::pow(lambda, 1.0 / V.exponent());
        const double r_max = c.grid.r_max.empty() ? std::max(4.0 * R, 100.0) : c.grid.r_max.front();
        const auto split = divergence_split(V, R, r_max);
        const auto counts = cm_inequality_check(split, lambda, r_max, rtol);
        record("cm_counts", lambda, static_cast<double>(counts.n_left), static_cast<double>(counts.n_right),
               counts.n_left <= counts.n_right);
      }
    } else {
      for (double r_max : or_default(c.grid.r_max, {100.0})) {
        const auto count = prufer_count(V, 1.0, r_max, rtol).zero_count;
        const double bargmann = bargmann_bound(V, r_max);
        record("bargmann", r_max, static_cast<double>(count), bargmann + 1.0, count <= bargmann + 1.0);
        // The well profile -V must be nonincreasing for this bound; other shapes are skipped.
        PotentialSpec negated = *c.potential;
        negated.coefficient = -negated.coefficient;
        for (auto& step : negated.steps) step.second = -step.second;
        try {
          const double calogero = calogero_bound(negated.to_potential(), r_max);
          record("calogero", r_max, static_cast<double>(count), calogero + 1.0, count <= calogero + 1.0);
        } catch (const Error& err) {
          if (err.code() != ErrorCode::monotonicity_violation) throw;
        }
      }
    }
  }

  o.violated = failures > 0;
  o.verdict = o.violated ? "violated" : "holds";
  o.key_numbers = {{"failures", failures}};
  return o;
}

}  // namespace

std::filesystem::path resolve_output_dir(const ExperimentConfig& config, const RunOptions& options) {
  if (!options.output_dir.empty()) return options.output_dir;
  if (!config.output_path.empty()) return config.output_path;
  if (const char* env = std::getenv(kOutputDirEnv); env != nullptr && *env != '\0') return env;
  return "oscspec-out";
}

RunResult run(const ExperimentConfig& config, const RunOptions& options) {
  RunResult result;
  const auto start = std::chrono::steady_clock::now();
  try {
    const auto dir = resolve_output_dir(config, options);
    std::filesystem::create_directories(dir);
    const std::string stem = to_string(config.experiment);
    result.csv_path = dir / (stem + ".csv");
    result.summary_path = dir / (stem + ".summary.json");

    Outcome outcome;
    switch (config.experiment) {
      case ExperimentKind::spectrum_scan:
        outcome = spectrum_scan_experiment(config, result.csv_path, options.threads);
        break;
      case ExperimentKind::szego_scan:
        outcome = szego_scan_experiment(config, result.csv_path, options.threads);
        break;
      case ExperimentKind::hardy_suite:
        outcome = hardy_suite_experiment(config, result.csv_path);
        break;
      case ExperimentKind::sharpness_search:
        outcome = sharpness_experiment(config, result.csv_path, options.threads);
        break;
      case ExperimentKind::coupling_scan:
        outcome = coupling_experiment(config, result.csv_path, options.threads);
        break;
      case ExperimentKind::verify_inequalities:
        outcome = verify_experiment(config, result.csv_path);
        break;
    }

    const auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start);
    json summary = {{"verdict", outcome.verdict},
                    {"key_numbers", outcome.key_numbers},
                    {"runtime_ms", elapsed.count()},
                    {"config_echo", json::parse(serialize(config))}};
    std::ofstream out(result.summary_path, std::ios::binary | std::ios::trunc);
    out << summary.dump(2) << '\n';
    if (!out) throw Error(ErrorCode::invalid_parameters, "cannot write " + result.summary_path.string());

    result.verdict = outcome.verdict;
    result.exit_code = (config.experiment == ExperimentKind::verify_inequalities && outcome.violated) ? 2 : 0;
  } catch (const std::exception& err) {
    result.exit_code = 1;
    result.verdict = "error";
    result.error_message = err.what();
  }
  return result;
}

const std::vector<CatalogEntry>& list_experiments() {
  static const std::vector<CatalogEntry> catalog{
      {"spectrum-scan", "Bound-state counts and eigenvalue sums of growing Dirichlet sections",
       "Finiteness of bound states when limsup n^2 W_n < 1/4; threshold 2 gamma_a + gamma_b = 1/4 for "
       "inverse-square perturbations",
       R"({"experiment":"spectrum-scan","family":{"kind":"alternating","beta":0.4,"gamma":1},"grid":{"sizes":[1000,10000,100000]}})"},
      {"szego-scan", "Szego integral of eventually-free truncations under horizon doubling",
       "Szego condition for conditionally summable perturbations (gamma > 1/2) and its failure for gamma < 1/2",
       R"({"experiment":"szego-scan","family":{"kind":"alternating","beta":1,"gamma":0.4},"grid":{"horizons":[1000,2000,4000,8000]},"tolerances":{"quad_nodes":2048}})"},
      {"hardy-suite", "Discrete Hardy inequality, its comparison potential and near-optimizers",
       "Discrete Hardy inequality sum u_n^2/(4n^2) <= <u,(2-J0)u> with sharp constant 1/4",
       R"({"experiment":"hardy-suite","grid":{"sizes":[1000,10000],"trials":200},"seed":7})"},
      {"sharpness-search", "Trial-vector search for negative quadratic forms of 2 - J",
       "Sharpness of the 1/4 threshold: infinitely many bound states once 2 gamma_a + gamma_b > 1/4",
       R"({"experiment":"sharpness-search","grid":{"gamma_a":[0,0.05],"gamma_b":[1.25,0.1]}})"},
      {"coupling-scan", "Zero counts of -u'' + lambda V u under growing coupling and the fitted log-log slope",
       "Coupling-constant scaling N(lambda V_beta) ~ lambda^(1/beta) for oscillatory decay, lambda^(1/2) in the "
       "Weyl regime",
       R"({"experiment":"coupling-scan","potential":{"kind":"sin-over-power","exponent":2.5},"grid":{"lambdas":[100,1000,10000]}})"},
      {"verify-inequalities", "Form gaps, summation-by-parts and Hardy bounds, Calogero/Bargmann/Chadan-Martin counts",
       "Divergence-form comparison 2 - J >= (2 - J0 - W)/2 and the Chadan-Martin inequality N(div W) <= N(-4W^2)",
       R"({"experiment":"verify-inequalities","family":{"kind":"alternating","alpha":0.05,"beta":0.3,"gamma":1},"grid":{"sizes":[500],"trials":100},"seed":1})"},
  };
  return catalog;
}

}  // namespace oscspec
