#pragma once

#include <cstdint>
#include <filesystem>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace oscspec {

enum class FamilyKind { alternating, cosine, inverse_square, table, free };

const char* to_string(FamilyKind kind) noexcept;
std::optional<FamilyKind> family_kind_from_string(const std::string& name);

struct CoefficientPair {
  double a = 1.0;
  double b = 0.0;

  friend bool operator==(const CoefficientPair&, const CoefficientPair&) = default;
};

/// Rule producing the Jacobi parameters (a_n, b_n), n >= 1.
///
///   alternating     a_n = 1 + (-1)^n alpha n^-gamma,   b_n = (-1)^n beta n^-gamma
///   cosine          a_n = 1 + cos(eta n) alpha n^-gamma, b_n = cos(eta n) beta n^-gamma
///   inverse_square  a_n = 1 + alpha / n^2,             b_n = beta / n^2   (gamma unused)
///   table / free    a_n = 1, b_n = 0
///
/// Entries of `table` override the formula at sites 1..table.size(); the table
/// kind is therefore free beyond its length.
struct CoefficientSequence {
  FamilyKind kind = FamilyKind::free;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 1.0;
  double eta = std::numbers::pi;
  std::vector<CoefficientPair> table;

  static CoefficientSequence free_family();
  static CoefficientSequence alternating(double alpha, double beta, double gamma);
  static CoefficientSequence cosine(double alpha, double beta, double gamma, double eta);
  static CoefficientSequence inverse_square(double gamma_a, double gamma_b);
  static CoefficientSequence from_table(std::vector<CoefficientPair> entries);

  /// True for the kinds whose perturbation oscillates (alternating, cosine).
  bool oscillatory() const noexcept;

  friend bool operator==(const CoefficientSequence&, const CoefficientSequence&) = default;
};

/// Validated, reusable evaluator.  Construction throws Error{invalid_parameters}
/// when a_n <= 0 for some n is provable from the parameters.
class SequenceEvaluator {
 public:
  explicit SequenceEvaluator(CoefficientSequence seq);

  CoefficientPair operator()(std::int64_t n) const;

  /// cos(eta n) for the cosine kind, (-1)^n for alternating (exact), 0 otherwise.
  double oscillation(std::int64_t n) const noexcept;
  /// Formula perturbations without table overrides.
  double formula_a_perturbation(std::int64_t n) const noexcept;
  double formula_b_perturbation(std::int64_t n) const noexcept;

  const CoefficientSequence& sequence() const noexcept { return seq_; }

 private:
  double envelope(std::int64_t n) const noexcept;

  CoefficientSequence seq_;
  bool eta_is_pi_ = false;
};

/// (a_n, b_n) at site n >= 1.
CoefficientPair evaluate(const CoefficientSequence& seq, std::int64_t n);

enum class Component { a_part, b_part };

/// -sum_{j >= n} of the chosen perturbation (a_j - 1 or b_j), to absolute accuracy tol.
double tail_sum(const CoefficientSequence& seq, Component component, std::int64_t n, double tol = 1e-14);

enum class SeriesVerdict { bounded, divergent, inconclusive };
const char* to_string(SeriesVerdict verdict) noexcept;

/// Partial sums of a nonnegative series on doubling windows H/8, H/4, H/2, H.
struct SeriesReport {
  double partial = 0.0;
  std::vector<double> window_partials;
  SeriesVerdict verdict = SeriesVerdict::inconclusive;
};

/// Classifies growth from partial sums on successive doublings with the ratio threshold.
SeriesVerdict classify_doubling(const std::vector<double>& window_partials, double ratio_threshold = 1.05);

struct DecompositionSums {
  SeriesReport abs_c;
  SeriesReport abs_e;
  SeriesReport d_squared;
  SeriesReport f_squared;

  bool all_bounded() const noexcept;
};

/// Summation-by-parts split a_n = 1 + c_n + d_{n+1} - d_n, b_n = e_n + f_{n+1} - f_n.
/// Vectors are 0-based: c[k], e[k] belong to site k+1 (k < horizon); d[k], f[k]
/// to site k+1 (k <= horizon).
struct Decomposition {
  std::int64_t horizon = 0;
  std::vector<double> c;
  std::vector<double> d;
  std::vector<double> e;
  std::vector<double> f;
  DecompositionSums sums;
};

Decomposition decompose(const CoefficientSequence& seq, std::int64_t horizon, double tol = 1e-14);

enum class ConditionVerdict { holds, fails, inconclusive };
const char* to_string(ConditionVerdict verdict) noexcept;

enum class SzegoPrediction { finite, infinite, undetermined };
const char* to_string(SzegoPrediction prediction) noexcept;

struct HypothesisReport {
  // (i) S_n = -sum_{j<=n} log a_j
  double log_sum_min = 0.0;
  double log_sum_max = 0.0;
  double log_sum_final = 0.0;
  std::vector<double> log_sum_window_max;
  ConditionVerdict limsup_bounded_below = ConditionVerdict::inconclusive;
  // (ii) sum (a_n - 1)^2 + b_n^2
  SeriesReport square_sum;
  // (iii) all four decomposition sums bounded
  bool summable_decomposition = false;
  SzegoPrediction prediction = SzegoPrediction::undetermined;
};

HypothesisReport check_hypotheses(const CoefficientSequence& seq, std::int64_t horizon);

/// Two-column CSV with header "a,b"; row k is site k (1-indexed).
std::vector<CoefficientPair> read_coefficient_table(const std::filesystem::path& path);

}  // namespace oscspec
