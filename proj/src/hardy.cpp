#include "oscspec/hardy.hpp"

#include <cmath>
#include <numbers>

#include "oscspec/error.hpp"
#include "oscspec/operator.hpp"
#include "oscspec/parallel.hpp"
#include "oscspec/tridiagonal.hpp"

namespace oscspec {

HardyCheck hardy_check(std::span<const double> u) {
  HardyCheck out;
  for (std::size_t k = 0; k < u.size(); ++k) {
    const double n = static_cast<double>(k + 1);
    out.lhs += u[k] * u[k] / (4.0 * n * n);
  }
  out.rhs = free_form(u);
  return out;
}

double hardy_potential(std::int64_t n) {
  if (n < 1) throw Error(ErrorCode::invalid_parameters, "hardy_potential needs n >= 1");
  const double x = 1.0 / static_cast<double>(n);
  const double p = std::sqrt(1.0 + x);
  const double m = std::sqrt(1.0 - x);
  // p + m - 2 = ((p + m)^2 - 4) / (p + m + 2) and (p + m)^2 - 4 = -2 x^2 / (1 + sqrt(1 - x^2)).
  return -2.0 * x * x / ((1.0 + std::sqrt((1.0 - x) * (1.0 + x))) * (p + m + 2.0));
}

std::vector<double> near_optimizer(std::size_t N) {
  if (N < 1) throw Error(ErrorCode::invalid_parameters, "near_optimizer needs N >= 1");
  const double scale = std::numbers::pi / (2.0 * std::log(static_cast<double>(N) + 1.0));
  std::vector<double> u(N);
  for (std::size_t k = 0; k < N; ++k) {
    const double n = static_cast<double>(k + 1);
    u[k] = std::sqrt(n) * std::cos(scale * std::log(n));
  }
  return u;
}

double hardy_min_ratio(std::size_t N, double atol) {
  if (N < 1) throw Error(ErrorCode::invalid_parameters, "hardy_min_ratio needs N >= 1");
  std::vector<double> diag(N);
  const std::vector<double> off(N - 1, -1.0);
  auto has_negative = [&](double mu) {
    for (std::size_t k = 0; k < N; ++k) {
      const double n = static_cast<double>(k + 1);
      diag[k] = 2.0 - mu / (4.0 * n * n);
    }
    return tridiagonal::count_below(diag, off, 0.0, tridiagonal::norm_bound(diag, off)) > 0;
  };
  // delta_1 has ratio 8, and the inequality itself gives ratio >= 1.
  double lo = 1.0;
  double hi = 8.0;
  while (hi - lo > atol) {
    const double mid = 0.5 * (lo + hi);
    (has_negative(mid) ? hi : lo) = mid;
  }
  return hi;
}

TrialVector make_trial_vector(std::int64_t ell, double L) {
  if (ell < 1 || !(L > 1.0)) throw Error(ErrorCode::invalid_parameters, "trial vector needs ell >= 1 and L > 1");
  TrialVector t;
  t.ell = ell;
  t.L = L;
  t.first_site = ell;
  const double log_L = std::log(L);
  const double ell_d = static_cast<double>(ell);
  const auto last = static_cast<std::int64_t>(std::floor(L * ell_d));
  for (std::int64_t n = ell; n <= last; ++n) {
    const double x = static_cast<double>(n) / ell_d;
    t.values.push_back(std::sqrt(ell_d) * std::sqrt(x) * std::sin(std::numbers::pi * std::log(x) / log_L));
  }
  return t;
}

double sharpness_form(double gamma_a, double gamma_b, const TrialVector& u) {
  if (gamma_a < 0.0 || gamma_b < 0.0) throw Error(ErrorCode::invalid_parameters, "gamma_a, gamma_b must be >= 0");
  auto a = [&](std::int64_t n) { return n == 0 ? 1.0 : 1.0 + gamma_a / (static_cast<double>(n) * n); };
  auto a_excess = [&](std::int64_t n) { return n == 0 ? 0.0 : gamma_a / (static_cast<double>(n) * n); };
  const auto& v = u.values;
  const std::int64_t first = u.first_site;
  auto value = [&](std::int64_t n) {
    const std::int64_t k = n - first;
    return (k >= 0 && k < static_cast<std::int64_t>(v.size())) ? v[static_cast<std::size_t>(k)] : 0.0;
  };

  double kinetic = 0.0;
  double potential = 0.0;
  const std::int64_t last = first + static_cast<std::int64_t>(v.size()) - 1;
  for (std::int64_t n = std::max<std::int64_t>(first - 1, 0); n <= last; ++n) {
    const double du = value(n + 1) - value(n);
    kinetic += a(n) * du * du;
  }
  for (std::int64_t n = first; n <= last; ++n) {
    const double un = value(n);
    const double b = gamma_b / (static_cast<double>(n) * n);
    potential += (-(a_excess(n) + a_excess(n - 1)) - b) * un * un;
  }
  return kinetic + potential;
}

double sharpness_form(double gamma_a, double gamma_b, std::int64_t ell, double L) {
  return sharpness_form(gamma_a, gamma_b, make_trial_vector(ell, L));
}

std::vector<SharpnessPoint> sharpness_search(double gamma_a, double gamma_b, const std::vector<std::int64_t>& ells,
                                             const std::vector<double>& log_Ls, unsigned threads) {
  std::vector<SharpnessPoint> points(ells.size() * log_Ls.size());
  parallel_for(points.size(), threads, [&](std::size_t i) {
    const auto ell = ells[i / log_Ls.size()];
    const double log_L = log_Ls[i % log_Ls.size()];
    points[i] = {ell, log_L, sharpness_form(gamma_a, gamma_b, ell, std::exp(log_L))};
  });
  return points;
}

}  // namespace oscspec
