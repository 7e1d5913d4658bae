#include "oscspec/operator.hpp"

#include <algorithm>
#include <cmath>

#include "oscspec/csv.hpp"
#include "oscspec/error.hpp"
#include "oscspec/tridiagonal.hpp"

namespace oscspec {

TruncatedJacobi::TruncatedJacobi(std::vector<double> diag, std::vector<double> offdiag)
    : diag_(std::move(diag)), offdiag_(std::move(offdiag)) {
  if (diag_.empty()) throw Error(ErrorCode::invalid_parameters, "empty section");
  if (offdiag_.size() + 1 != diag_.size()) {
    throw Error(ErrorCode::invalid_parameters, "offdiag must have size n - 1");
  }
  for (double b : diag_) {
    if (!std::isfinite(b)) throw Error(ErrorCode::invalid_parameters, "non-finite diagonal entry");
  }
  for (double a : offdiag_) {
    if (!(a > 0.0) || !std::isfinite(a)) throw Error(ErrorCode::invalid_parameters, "offdiag entries must be > 0");
  }
  norm_ = tridiagonal::norm_bound(diag_, offdiag_);
}

TruncatedJacobi truncate(const CoefficientSequence& seq, std::size_t n) {
  if (n < 2) throw Error(ErrorCode::invalid_parameters, "section size must be >= 2");
  const SequenceEvaluator ev(seq);
  std::vector<double> diag(n);
  std::vector<double> off(n - 1);
  for (std::size_t k = 0; k < n; ++k) {
    const auto [a, b] = ev(static_cast<std::int64_t>(k + 1));
    diag[k] = b;
    if (k + 1 < n) off[k] = a;
  }
  return {std::move(diag), std::move(off)};
}

TruncatedJacobi free_section(std::size_t n) {
  if (n < 1) throw Error(ErrorCode::invalid_parameters, "section size must be >= 1");
  return {std::vector<double>(n, 0.0), std::vector<double>(n - 1, 1.0)};
}

TruncatedJacobi flip_sign(const TruncatedJacobi& J) {
  std::vector<double> diag(J.diag().begin(), J.diag().end());
  for (double& b : diag) b = -b;
  return {std::move(diag), std::vector<double>(J.offdiag().begin(), J.offdiag().end())};
}

ComparisonPair comparison_operators(std::span<const double> f, std::size_t n) {
  if (n < 1) throw Error(ErrorCode::invalid_parameters, "section size must be >= 1");
  if (f.size() < n + 1) throw Error(ErrorCode::invalid_parameters, "f must cover sites 1..n+1");
  std::vector<double> plus(n);
  for (std::size_t k = 0; k < n; ++k) plus[k] = 2.0 * (f[k] * f[k] + f[k + 1] * f[k + 1]);
  std::vector<double> minus(plus);
  for (double& x : minus) x = -x;
  return {TruncatedJacobi(std::move(plus), std::vector<double>(n - 1, 1.0)),
          TruncatedJacobi(std::move(minus), std::vector<double>(n - 1, 1.0))};
}

ShiftedSequences shift(std::span<const double> x, double sharp_boundary) {
  ShiftedSequences s;
  s.base.assign(x.begin(), x.end());
  if (!x.empty()) {
    s.tilde.assign(x.begin() + 1, x.end());
    s.sharp.reserve(x.size());
    s.sharp.push_back(sharp_boundary);
    s.sharp.insert(s.sharp.end(), x.begin(), x.end() - 1);
  }
  return s;
}

std::vector<double> potential_W(const Decomposition& dec, std::size_t n) {
  if (static_cast<std::size_t>(dec.horizon) < n || dec.d.size() < n + 1 || dec.f.size() < n + 1) {
    throw Error(ErrorCode::invalid_parameters, "decomposition does not cover sites 1..n+1");
  }
  const auto c = shift(std::span(dec.c).first(n), 0.0);
  const auto d = shift(std::span(dec.d).first(n + 1), dec.d.front());
  const auto f = shift(std::span(dec.f).first(n + 1), 0.0);

  std::vector<double> W(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double ds = d.sharp[k];
    const double dk = d.base[k];
    const double dt = d.tilde[k];
    W[k] = 2.0 * dec.e[k] + 2.0 * std::abs(c.base[k]) + 2.0 * std::abs(c.sharp[k]) +
           12.0 * (f.base[k] * f.base[k] + f.tilde[k] * f.tilde[k]) +
           48.0 * (ds * ds + 2.0 * dk * dk + dt * dt);
  }
  return W;
}

double form_gap(const TruncatedJacobi& J, std::span<const double> W, std::size_t margin) {
  const std::size_t n = J.size();
  if (margin >= n) throw Error(ErrorCode::invalid_parameters, "margin must be smaller than the section");
  const std::size_t m = n - margin;
  if (W.size() < m) throw Error(ErrorCode::invalid_parameters, "W too short for the interior block");

  std::vector<double> diag(m);
  std::vector<double> off(m - 1);
  for (std::size_t k = 0; k < m; ++k) diag[k] = 1.0 - J.diag()[k] + 0.5 * W[k];
  for (std::size_t k = 0; k + 1 < m; ++k) off[k] = 0.5 - J.offdiag()[k];

  const double scale = std::max(1.0, tridiagonal::norm_bound(diag, off));
  return tridiagonal::min_eigenvalue(diag, off, 1e-14 * scale);
}

double free_form(std::span<const double> u) {
  double sum = 0.0;
  double prev = 0.0;
  for (double x : u) {
    sum += (x - prev) * (x - prev);
    prev = x;
  }
  return sum + prev * prev;
}

SbpBound sbp_bound_check(std::span<const double> u, std::span<const double> f) {
  const std::size_t m = u.size();
  if (f.size() != m + 1) throw Error(ErrorCode::invalid_parameters, "f must have u.size() + 1 entries");
  double bu = 0.0;
  double weighted = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const double u2 = u[k] * u[k];
    bu += (f[k + 1] - f[k]) * u2;
    weighted += (f[k] * f[k] + f[k + 1] * f[k + 1]) * u2;
  }
  return {std::abs(bu), std::sqrt(free_form(u)) * std::sqrt(2.0 * weighted)};
}

void write_section_csv(const TruncatedJacobi& J, const std::filesystem::path& path) {
  csv::Writer out(path, {"index", "b", "a"});
  const std::size_t n = J.size();
  for (std::size_t k = 0; k < n; ++k) {
    csv::Field a = std::monostate{};
    if (k + 1 < n) a = J.offdiag()[k];
    out.row({static_cast<std::int64_t>(k + 1), J.diag()[k], a});
  }
}

}  // namespace oscspec
