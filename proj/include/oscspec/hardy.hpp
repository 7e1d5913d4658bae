#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace oscspec {

// Vectors here are 0-based arrays over sites 1, 2, ... unless a first site is given.

struct HardyCheck {
  double lhs = 0.0;  // sum u_n^2 / (4 n^2)
  double rhs = 0.0;  // <u, (2 - J0) u>
};

HardyCheck hardy_check(std::span<const double> u);

/// (1 + 1/n)^{1/2} + (1 - 1/n)^{1/2} - 2, evaluated without cancellation.
double hardy_potential(std::int64_t n);

/// u_n = sqrt(n) cos(pi log n / (2 log(N + 1))), n = 1..N.
std::vector<double> near_optimizer(std::size_t N);

/// Smallest rhs/lhs over all vectors supported on 1..N, located by Sturm bisection.
double hardy_min_ratio(std::size_t N, double atol = 1e-10);

struct TrialVector {
  std::int64_t ell = 0;
  double L = 0.0;
  std::int64_t first_site = 0;   // site of values[0]
  std::vector<double> values;
};

/// u_n = sqrt(ell) phi(n / ell), phi(x) = sqrt(x) sin(pi log x / log L) on [1, L].
TrialVector make_trial_vector(std::int64_t ell, double L);

/// <u, (2 - J) u> for a_n = 1 + gamma_a / n^2, b_n = gamma_b / n^2.
double sharpness_form(double gamma_a, double gamma_b, const TrialVector& u);
double sharpness_form(double gamma_a, double gamma_b, std::int64_t ell, double L);

inline const std::vector<std::int64_t> kDefaultSharpnessElls{10, 50, 200};
inline const std::vector<double> kDefaultSharpnessLogLs{3.0, 4.0, 5.0, 6.0};

struct SharpnessPoint {
  std::int64_t ell = 0;
  double log_L = 0.0;
  double value = 0.0;
};

/// Form values on the (ell, log L) grid, lexicographic order.
std::vector<SharpnessPoint> sharpness_search(double gamma_a, double gamma_b,
                                             const std::vector<std::int64_t>& ells = kDefaultSharpnessElls,
                                             const std::vector<double>& log_Ls = kDefaultSharpnessLogLs,
                                             unsigned threads = 1);

}  // namespace oscspec
