#include "oscspec/sequences.hpp"

#include <algorithm>
#include <boost/math/special_functions/trigamma.hpp>
#include <cmath>
#include <complex>
#include <fstream>
#include <limits>
#include <sstream>

#include "oscspec/acceleration.hpp"
#include "oscspec/error.hpp"

namespace oscspec {

const char* to_string(FamilyKind kind) noexcept {
  switch (kind) {
    case FamilyKind::alternating: return "alternating";
    case FamilyKind::cosine: return "cosine";
    case FamilyKind::inverse_square: return "inverse-square";
    case FamilyKind::table: return "table";
    case FamilyKind::free: return "free";
  }
  return "unknown";
}

std::optional<FamilyKind> family_kind_from_string(const std::string& name) {
  for (auto kind : {FamilyKind::alternating, FamilyKind::cosine, FamilyKind::inverse_square,
                    FamilyKind::table, FamilyKind::free}) {
    if (name == to_string(kind)) return kind;
  }
  return std::nullopt;
}

const char* to_string(SeriesVerdict verdict) noexcept {
  switch (verdict) {
    case SeriesVerdict::bounded: return "bounded";
    case SeriesVerdict::divergent: return "divergent";
    case SeriesVerdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

const char* to_string(ConditionVerdict verdict) noexcept {
  switch (verdict) {
    case ConditionVerdict::holds: return "holds";
    case ConditionVerdict::fails: return "fails";
    case ConditionVerdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

const char* to_string(SzegoPrediction prediction) noexcept {
  switch (prediction) {
    case SzegoPrediction::finite: return "finite";
    case SzegoPrediction::infinite: return "infinite";
    case SzegoPrediction::undetermined: return "undetermined";
  }
  return "unknown";
}

CoefficientSequence CoefficientSequence::free_family() { return {}; }

CoefficientSequence CoefficientSequence::alternating(double alpha, double beta, double gamma) {
  CoefficientSequence seq;
  seq.kind = FamilyKind::alternating;
  seq.alpha = alpha;
  seq.beta = beta;
  seq.gamma = gamma;
  return seq;
}

CoefficientSequence CoefficientSequence::cosine(double alpha, double beta, double gamma, double eta) {
  CoefficientSequence seq = alternating(alpha, beta, gamma);
  seq.kind = FamilyKind::cosine;
  seq.eta = eta;
  return seq;
}

CoefficientSequence CoefficientSequence::inverse_square(double gamma_a, double gamma_b) {
  CoefficientSequence seq;
  seq.kind = FamilyKind::inverse_square;
  seq.alpha = gamma_a;
  seq.beta = gamma_b;
  seq.gamma = 2.0;
  return seq;
}

CoefficientSequence CoefficientSequence::from_table(std::vector<CoefficientPair> entries) {
  CoefficientSequence seq;
  seq.kind = FamilyKind::table;
  seq.table = std::move(entries);
  return seq;
}

bool CoefficientSequence::oscillatory() const noexcept {
  return kind == FamilyKind::alternating || kind == FamilyKind::cosine;
}

// ---------------------------------------------------------------------------

namespace {

constexpr std::int64_t kMaxDirectValidation = 10'000'000;

void require_finite(double x, const char* name) {
  if (!std::isfinite(x)) throw Error(ErrorCode::invalid_parameters, std::string(name) + " is not finite");
}

}  // namespace

SequenceEvaluator::SequenceEvaluator(CoefficientSequence seq) : seq_(std::move(seq)) {
  require_finite(seq_.alpha, "alpha");
  require_finite(seq_.beta, "beta");
  require_finite(seq_.gamma, "gamma");
  require_finite(seq_.eta, "eta");
  if (seq_.oscillatory() && !(seq_.gamma > 0.0)) {
    throw Error(ErrorCode::invalid_parameters, "gamma must be positive");
  }
  if (seq_.kind == FamilyKind::cosine) {
    if (!(seq_.eta > 0.0 && seq_.eta < 2.0 * std::numbers::pi)) {
      throw Error(ErrorCode::invalid_parameters, "eta must lie in (0, 2pi)");
    }
    eta_is_pi_ = seq_.eta == std::numbers::pi;
  }
  if (seq_.kind == FamilyKind::inverse_square) seq_.gamma = 2.0;

  for (std::size_t k = 0; k < seq_.table.size(); ++k) {
    const auto& entry = seq_.table[k];
    require_finite(entry.a, "table a");
    require_finite(entry.b, "table b");
    if (!(entry.a > 0.0)) {
      throw Error(ErrorCode::invalid_parameters, "table entry " + std::to_string(k + 1) + " has a <= 0");
    }
  }

  // Formula sites with |alpha| n^-gamma >= 1 are the only ones that can violate a_n > 0.
  const bool has_formula = seq_.oscillatory() || seq_.kind == FamilyKind::inverse_square;
  if (has_formula && std::abs(seq_.alpha) >= 1.0) {
    const double reach = std::pow(std::abs(seq_.alpha), 1.0 / seq_.gamma);
    if (!(reach < static_cast<double>(kMaxDirectValidation))) {
      throw Error(ErrorCode::invalid_parameters, "|alpha|^(1/gamma) too large to certify a_n > 0");
    }
    const auto last = static_cast<std::int64_t>(std::ceil(reach)) + 1;
    for (std::int64_t n = static_cast<std::int64_t>(seq_.table.size()) + 1; n <= last; ++n) {
      if (!(1.0 + formula_a_perturbation(n) > 0.0)) {
        throw Error(ErrorCode::invalid_parameters, "a_" + std::to_string(n) + " <= 0 for these parameters");
      }
    }
  }
}

double SequenceEvaluator::envelope(std::int64_t n) const noexcept {
  const auto x = static_cast<double>(n);
  if (seq_.gamma == 1.0) return 1.0 / x;
  if (seq_.gamma == 2.0) return 1.0 / (x * x);
  return std::pow(x, -seq_.gamma);
}

double SequenceEvaluator::oscillation(std::int64_t n) const noexcept {
  switch (seq_.kind) {
    case FamilyKind::alternating:
      return (n % 2 == 0) ? 1.0 : -1.0;
    case FamilyKind::cosine:
      if (eta_is_pi_) return (n % 2 == 0) ? 1.0 : -1.0;
      return std::cos(seq_.eta * static_cast<double>(n));
    default:
      return 0.0;
  }
}

double SequenceEvaluator::formula_a_perturbation(std::int64_t n) const noexcept {
  if (seq_.kind == FamilyKind::inverse_square) return seq_.alpha * envelope(n);
  if (!seq_.oscillatory() || seq_.alpha == 0.0) return 0.0;
  return seq_.alpha * oscillation(n) * envelope(n);
}

double SequenceEvaluator::formula_b_perturbation(std::int64_t n) const noexcept {
  if (seq_.kind == FamilyKind::inverse_square) return seq_.beta * envelope(n);
  if (!seq_.oscillatory() || seq_.beta == 0.0) return 0.0;
  return seq_.beta * oscillation(n) * envelope(n);
}

CoefficientPair SequenceEvaluator::operator()(std::int64_t n) const {
  if (n < 1) throw Error(ErrorCode::invalid_parameters, "site index must be >= 1");
  if (static_cast<std::size_t>(n) <= seq_.table.size()) return seq_.table[static_cast<std::size_t>(n - 1)];
  return {1.0 + formula_a_perturbation(n), formula_b_perturbation(n)};
}

CoefficientPair evaluate(const CoefficientSequence& seq, std::int64_t n) { return SequenceEvaluator(seq)(n); }

// ---------------------------------------------------------------------------

namespace {

/// sum_{j >= n} osc(j) env(j) for the oscillatory kinds (unit amplitude).
double oscillatory_unit_tail(const SequenceEvaluator& ev, std::int64_t n, double tol) {
  const auto& seq = ev.sequence();
  const bool alternating_phase =
      seq.kind == FamilyKind::alternating || (seq.kind == FamilyKind::cosine && seq.eta == std::numbers::pi);
  const double gamma = seq.gamma;
  auto env = [gamma](std::int64_t j) {
    const auto x = static_cast<double>(j);
    if (gamma == 1.0) return 1.0 / x;
    return std::pow(x, -gamma);
  };
  if (alternating_phase) {
    auto term = [&](std::int64_t j) { return std::complex<double>(ev.oscillation(j) * env(j), 0.0); };
    return sum_oscillatory_tail(term, n, {-1.0, 0.0}, tol).value.real();
  }
  const double eta = seq.eta;
  auto term = [&](std::int64_t j) {
    const double phase = eta * static_cast<double>(j);
    return env(j) * std::complex<double>(std::cos(phase), std::sin(phase));
  };
  return sum_oscillatory_tail(term, n, std::polar(1.0, eta), tol).value.real();
}

double formula_unit_tail(const SequenceEvaluator& ev, std::int64_t n, double tol) {
  const auto& seq = ev.sequence();
  if (seq.oscillatory()) return oscillatory_unit_tail(ev, n, tol);
  if (seq.kind == FamilyKind::inverse_square) return boost::math::trigamma(static_cast<double>(n));
  return 0.0;
}

}  // namespace

double tail_sum(const CoefficientSequence& seq, Component component, std::int64_t n, double tol) {
  if (n < 1) throw Error(ErrorCode::invalid_parameters, "tail index must be >= 1");
  if (!(tol > 0.0)) throw Error(ErrorCode::invalid_parameters, "tol must be positive");
  const SequenceEvaluator ev(seq);
  const double amplitude = component == Component::a_part ? seq.alpha : seq.beta;

  double formula = 0.0;
  if (amplitude != 0.0) formula = amplitude * formula_unit_tail(ev, n, tol / std::abs(amplitude));

  double overrides = 0.0;
  for (auto j = static_cast<std::int64_t>(seq.table.size()); j >= n; --j) {
    const auto& entry = seq.table[static_cast<std::size_t>(j - 1)];
    if (component == Component::a_part) {
      overrides += (entry.a - 1.0) - ev.formula_a_perturbation(j);
    } else {
      overrides += entry.b - ev.formula_b_perturbation(j);
    }
  }
  return -(formula + overrides);
}

// ---------------------------------------------------------------------------

SeriesVerdict classify_doubling(const std::vector<double>& p, double ratio_threshold) {
  if (p.size() < 4) return SeriesVerdict::inconclusive;
  if (p.back() == 0.0) return SeriesVerdict::bounded;
  std::vector<double> ratios;
  for (std::size_t k = 0; k + 1 < p.size(); ++k) {
    ratios.push_back(p[k] > 0.0 ? p[k + 1] / p[k] : std::numeric_limits<double>::infinity());
  }
  if (std::all_of(ratios.end() - 3, ratios.end(), [&](double r) { return r >= ratio_threshold; })) {
    return SeriesVerdict::divergent;
  }
  if (std::all_of(ratios.end() - 2, ratios.end(), [&](double r) { return r < ratio_threshold; })) {
    return SeriesVerdict::bounded;
  }
  return SeriesVerdict::inconclusive;
}

bool DecompositionSums::all_bounded() const noexcept {
  return abs_c.verdict == SeriesVerdict::bounded && abs_e.verdict == SeriesVerdict::bounded &&
         d_squared.verdict == SeriesVerdict::bounded && f_squared.verdict == SeriesVerdict::bounded;
}

namespace {

std::vector<std::int64_t> doubling_windows(std::int64_t horizon) {
  return {horizon / 8, horizon / 4, horizon / 2, horizon};
}

/// Partial sums of values[0..h) at each window end h.
SeriesReport windowed_series(const std::vector<double>& terms, std::int64_t horizon) {
  SeriesReport report;
  const auto windows = doubling_windows(horizon);
  double sum = 0.0;
  std::size_t w = 0;
  for (std::int64_t k = 0; k < horizon; ++k) {
    sum += terms[static_cast<std::size_t>(k)];
    while (w < windows.size() && k + 1 == windows[w]) {
      report.window_partials.push_back(sum);
      ++w;
    }
  }
  report.partial = sum;
  report.verdict = classify_doubling(report.window_partials);
  return report;
}

}  // namespace

Decomposition decompose(const CoefficientSequence& seq, std::int64_t horizon, double tol) {
  if (horizon < 8) throw Error(ErrorCode::invalid_parameters, "decomposition horizon must be >= 8");
  const SequenceEvaluator ev(seq);
  const auto H = static_cast<std::size_t>(horizon);

  Decomposition dec;
  dec.horizon = horizon;
  dec.c.assign(H, 0.0);
  dec.e.assign(H, 0.0);
  dec.d.assign(H + 1, 0.0);
  dec.f.assign(H + 1, 0.0);

  if (seq.oscillatory() && (seq.alpha != 0.0 || seq.beta != 0.0)) {
    // Unit tail T(n) = sum_{j>=n} osc(j) env(j), anchored at H+1 and telescoped backwards.
    double tail = oscillatory_unit_tail(ev, horizon + 1, tol);
    dec.d[H] = -seq.alpha * tail;
    dec.f[H] = -seq.beta * tail;
    for (std::int64_t n = horizon; n >= 1; --n) {
      const double a_pert = ev.formula_a_perturbation(n);
      const double b_pert = ev.formula_b_perturbation(n);
      const auto k = static_cast<std::size_t>(n - 1);
      dec.d[k] = dec.d[k + 1] - a_pert;
      dec.f[k] = dec.f[k + 1] - b_pert;
    }
    const std::size_t overridden = std::min(seq.table.size(), H);
    for (std::size_t k = 0; k < overridden; ++k) {
      const auto n = static_cast<std::int64_t>(k + 1);
      dec.c[k] = (seq.table[k].a - 1.0) - ev.formula_a_perturbation(n);
      dec.e[k] = seq.table[k].b - ev.formula_b_perturbation(n);
    }
  } else {
    for (std::size_t k = 0; k < H; ++k) {
      const auto [a, b] = ev(static_cast<std::int64_t>(k + 1));
      dec.c[k] = a - 1.0;
      dec.e[k] = b;
    }
  }

  std::vector<double> scratch(H);
  auto fill = [&](auto fn) {
    for (std::size_t k = 0; k < H; ++k) scratch[k] = fn(k);
    return windowed_series(scratch, horizon);
  };
  dec.sums.abs_c = fill([&](std::size_t k) { return std::abs(dec.c[k]); });
  dec.sums.abs_e = fill([&](std::size_t k) { return std::abs(dec.e[k]); });
  dec.sums.d_squared = fill([&](std::size_t k) { return dec.d[k] * dec.d[k]; });
  dec.sums.f_squared = fill([&](std::size_t k) { return dec.f[k] * dec.f[k]; });
  return dec;
}

HypothesisReport check_hypotheses(const CoefficientSequence& seq, std::int64_t horizon) {
  if (horizon < 8) throw Error(ErrorCode::invalid_parameters, "hypothesis horizon must be >= 8");
  const SequenceEvaluator ev(seq);
  const auto H = static_cast<std::size_t>(horizon);
  HypothesisReport report;

  const auto windows = doubling_windows(horizon);
  std::vector<double> squares(H);
  double log_sum = 0.0;
  double window_max = -std::numeric_limits<double>::infinity();
  std::size_t w = 0;
  report.log_sum_min = std::numeric_limits<double>::infinity();
  report.log_sum_max = -std::numeric_limits<double>::infinity();
  for (std::int64_t n = 1; n <= horizon; ++n) {
    const auto [a, b] = ev(n);
    log_sum -= std::log(a);
    report.log_sum_min = std::min(report.log_sum_min, log_sum);
    report.log_sum_max = std::max(report.log_sum_max, log_sum);
    window_max = std::max(window_max, log_sum);
    if (w < windows.size() && n == windows[w]) {
      report.log_sum_window_max.push_back(window_max);
      window_max = -std::numeric_limits<double>::infinity();
      ++w;
    }
    squares[static_cast<std::size_t>(n - 1)] = (a - 1.0) * (a - 1.0) + b * b;
  }
  report.log_sum_final = log_sum;

  // limsup > -infinity: window maxima must not keep sinking under doubling.
  const auto& m = report.log_sum_window_max;
  constexpr double kDrift = 1e-3;
  const std::size_t last = m.size() - 1;
  const bool sinking = m[1] < m[0] - kDrift && m[2] < m[1] - kDrift && m[3] < m[2] - kDrift;
  const bool steady = m[last] >= m[last - 1] - kDrift && m[last - 1] >= m[last - 2] - kDrift;
  report.limsup_bounded_below =
      sinking ? ConditionVerdict::fails : (steady ? ConditionVerdict::holds : ConditionVerdict::inconclusive);

  report.square_sum = windowed_series(squares, horizon);

  try {
    report.summable_decomposition = decompose(seq, horizon).sums.all_bounded();
  } catch (const Error& err) {
    if (err.code() != ErrorCode::no_convergence) throw;
    report.summable_decomposition = false;
  }

  if (report.summable_decomposition) {
    report.prediction = SzegoPrediction::finite;
  } else if (report.limsup_bounded_below == ConditionVerdict::holds &&
             report.square_sum.verdict == SeriesVerdict::divergent) {
    report.prediction = SzegoPrediction::infinite;
  }
  return report;
}

// ---------------------------------------------------------------------------

std::vector<CoefficientPair> read_coefficient_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::config_parse, "cannot open table file " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::config_parse, "empty table file " + path.string());
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "a,b") throw Error(ErrorCode::config_parse, "table header must be \"a,b\", got \"" + line + "\"");

  std::vector<CoefficientPair> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw Error(ErrorCode::config_parse, path.string() + ":" + std::to_string(lineno) + ": expected two columns");
    }
    try {
      std::size_t used_a = 0;
      std::size_t used_b = 0;
      const std::string a_text = line.substr(0, comma);
      const std::string b_text = line.substr(comma + 1);
      CoefficientPair row{std::stod(a_text, &used_a), std::stod(b_text, &used_b)};
      if (used_a != a_text.size() || used_b != b_text.size()) throw std::invalid_argument("trailing text");
      rows.push_back(row);
    } catch (const std::exception&) {
      throw Error(ErrorCode::config_parse, path.string() + ":" + std::to_string(lineno) + ": malformed number");
    }
  }
  return rows;
}

}  // namespace oscspec
