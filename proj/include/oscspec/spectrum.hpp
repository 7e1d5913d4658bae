#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "oscspec/operator.hpp"

namespace oscspec {

std::size_t count_above(const TruncatedJacobi& J, double t);
std::size_t count_below(const TruncatedJacobi& J, double t);

struct SpectrumReport {
  std::size_t n = 0;
  std::vector<double> above;  // ascending, all > 2 + atol
  std::vector<double> below;  // ascending, all < -2 - atol
  std::size_t count_above = 0;
  std::size_t count_below = 0;
  double lt_half = 0.0;                 // sum sqrt(E^2 - 4)
  std::map<double, double> lt_alpha;    // exponent -> sum (|E| - 2)^exponent

  std::size_t total() const noexcept { return count_above + count_below; }
};

inline const std::vector<double> kDefaultLtExponents{0.5, 1.0, 1.5};

SpectrumReport eigs_outside(const TruncatedJacobi& J, double atol = 1e-12,
                            const std::vector<double>& exponents = kDefaultLtExponents);

inline constexpr std::size_t kDenseOracleLimit = 2000;

/// Every eigenvalue, ascending, from a dense symmetric QR solver.  Independent
/// of the Sturm machinery; intended for cross-checks.  Throws size_exceeded above
/// kDenseOracleLimit.
std::vector<double> dense_oracle(const TruncatedJacobi& J);

enum class CountVerdict { stabilized, growing, inconclusive };
const char* to_string(CountVerdict verdict) noexcept;

struct CountScanRow {
  std::size_t n = 0;
  std::size_t count_above = 0;
  std::size_t count_below = 0;
  double lt_half = 0.0;
};

struct CountScan {
  std::vector<CountScanRow> rows;
  CountVerdict verdict = CountVerdict::inconclusive;
};

/// Verdict over the last three sizes: stabilized when the total count is constant,
/// growing when the last total exceeds the total three sizes back and no total in
/// between decreases, inconclusive otherwise (including scans with < 3 sizes).
CountVerdict classify_counts(const std::vector<std::size_t>& totals);

CountScan count_scan(const CoefficientSequence& seq, const std::vector<std::size_t>& sizes,
                     unsigned threads = 1, double atol = 1e-12);

}  // namespace oscspec
