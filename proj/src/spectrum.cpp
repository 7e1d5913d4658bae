#include "oscspec/spectrum.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "oscspec/error.hpp"
#include "oscspec/parallel.hpp"
#include "oscspec/tridiagonal.hpp"

namespace oscspec {

std::size_t count_above(const TruncatedJacobi& J, double t) {
  return tridiagonal::count_above(J.diag(), J.offdiag(), t, J.norm_bound());
}

std::size_t count_below(const TruncatedJacobi& J, double t) {
  return tridiagonal::count_below(J.diag(), J.offdiag(), t, J.norm_bound());
}

namespace {

struct OutsideLists {
  std::vector<double> above;
  std::vector<double> below;
};

OutsideLists outside_eigenvalues(std::span<const double> diag, std::span<const double> off, double atol) {
  const double norm = tridiagonal::norm_bound(diag, off);
  const double edge = 2.0 + atol;
  OutsideLists lists;
  if (norm <= edge) return lists;
  lists.above = tridiagonal::eigenvalues_in(diag, off, edge, norm + 1.0, atol);

  std::vector<double> negated(diag.begin(), diag.end());
  for (double& b : negated) b = -b;
  auto mirrored = tridiagonal::eigenvalues_in(negated, off, edge, norm + 1.0, atol);
  lists.below.reserve(mirrored.size());
  for (auto it = mirrored.rbegin(); it != mirrored.rend(); ++it) lists.below.push_back(-*it);
  return lists;
}

double lt_half_of(const std::vector<double>& above, const std::vector<double>& below) {
  double sum = 0.0;
  for (double E : above) sum += std::sqrt((E - 2.0) * (E + 2.0));
  for (double E : below) sum += std::sqrt((-E - 2.0) * (-E + 2.0));
  return sum;
}

}  // namespace

SpectrumReport eigs_outside(const TruncatedJacobi& J, double atol, const std::vector<double>& exponents) {
  if (!(atol > 0.0)) throw Error(ErrorCode::invalid_parameters, "atol must be positive");
  auto lists = outside_eigenvalues(J.diag(), J.offdiag(), atol);

  SpectrumReport report;
  report.n = J.size();
  report.above = std::move(lists.above);
  report.below = std::move(lists.below);
  report.count_above = report.above.size();
  report.count_below = report.below.size();
  report.lt_half = lt_half_of(report.above, report.below);
  for (double p : exponents) {
    double sum = 0.0;
    for (double E : report.above) sum += std::pow(E - 2.0, p);
    for (double E : report.below) sum += std::pow(-E - 2.0, p);
    report.lt_alpha[p] = sum;
  }
  return report;
}

std::vector<double> dense_oracle(const TruncatedJacobi& J) {
  const auto n = static_cast<Eigen::Index>(J.size());
  if (J.size() > kDenseOracleLimit) {
    throw Error(ErrorCode::size_exceeded, "dense oracle limited to n <= " + std::to_string(kDenseOracleLimit));
  }
  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(std::max<Eigen::Index>(n - 1, 0));
  for (Eigen::Index k = 0; k < n; ++k) diag[k] = J.diag()[static_cast<std::size_t>(k)];
  for (Eigen::Index k = 0; k + 1 < n; ++k) sub[k] = J.offdiag()[static_cast<std::size_t>(k)];

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error(ErrorCode::no_convergence, "dense eigensolver failed");
  const auto& values = solver.eigenvalues();
  std::vector<double> out(values.data(), values.data() + values.size());
  std::sort(out.begin(), out.end());
  return out;
}

const char* to_string(CountVerdict verdict) noexcept {
  switch (verdict) {
    case CountVerdict::stabilized: return "stabilized";
    case CountVerdict::growing: return "growing";
    case CountVerdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

CountVerdict classify_counts(const std::vector<std::size_t>& totals) {
  if (totals.size() < 3) return CountVerdict::inconclusive;
  const auto last = totals.end() - 3;
  if (std::all_of(last, totals.end(), [&](std::size_t c) { return c == *last; })) {
    return CountVerdict::stabilized;
  }
  if (std::is_sorted(last, totals.end()) && totals.back() > *last) return CountVerdict::growing;
  return CountVerdict::inconclusive;
}

CountScan count_scan(const CoefficientSequence& seq, const std::vector<std::size_t>& sizes, unsigned threads,
                     double atol) {
  if (sizes.empty()) throw Error(ErrorCode::invalid_parameters, "count_scan needs at least one size");
  if (!std::is_sorted(sizes.begin(), sizes.end()) || sizes.front() < 2) {
    throw Error(ErrorCode::invalid_parameters, "scan sizes must be ascending and >= 2");
  }
  // One section at the largest size; every smaller size is a leading block of it.
  const TruncatedJacobi full = truncate(seq, sizes.back());

  CountScan scan;
  scan.rows.resize(sizes.size());
  parallel_for(sizes.size(), threads, [&](std::size_t i) {
    const std::size_t n = sizes[i];
    const auto lists = outside_eigenvalues(full.diag().first(n), full.offdiag().first(n - 1), atol);
    scan.rows[i] = {n, lists.above.size(), lists.below.size(), lt_half_of(lists.above, lists.below)};
  });

  std::vector<std::size_t> totals;
  for (const auto& row : scan.rows) totals.push_back(row.count_above + row.count_below);
  scan.verdict = classify_counts(totals);
  return scan;
}

}  // namespace oscspec
