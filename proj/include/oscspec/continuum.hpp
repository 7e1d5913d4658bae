#pragma once

#include <cstdint>
#include <vector>

#include "oscspec/potential.hpp"

namespace oscspec {

struct PruferResult {
  double lambda = 0.0;
  double r_max = 0.0;
  std::int64_t zero_count = 0;
  double final_theta = 0.0;
  bool tail_bound_ok = false;
  std::int64_t steps = 0;
};

/// Largest step the integrator may take at radius r: min(0.1, 0.05 (1 + r)) when V
/// oscillates on the unit scale, 0.05 (1 + r) otherwise.
double prufer_step_cap(const Potential1D& V, double r);

/// Zero count on (0, r_max] of the solution of -u'' + lambda V u = 0 with u(0) = 0,
/// from the Pruefer phase theta' = cos^2 theta - lambda V sin^2 theta, theta(0) = 0,
/// integrated by an adaptive Dormand-Prince 5(4) pair.  rtol bounds the local error
/// in theta per step.
PruferResult prufer_count(const Potential1D& V, double lambda, double r_max, double rtol = 1e-9);

/// lambda sup_{r > r_max} |V(r)| r^2 < 1/8, checked on a geometric radius grid.
bool tail_bound_ok(const Potential1D& V, double lambda, double r_max);

struct RMaxRule {
  double exponent = 0.0;  // r_max = max(floor, lambda^exponent); 0 selects 2 / beta
  double floor = 10.0;
};

struct CouplingScan {
  std::vector<PruferResult> rows;
  double slope = 0.0;  // least squares of log N on log lambda over the upper half of the grid
};

CouplingScan coupling_scan(const Potential1D& V, const std::vector<double>& lambdas, RMaxRule rule = {},
                           double rtol = 1e-9, unsigned threads = 1);

/// Least-squares slope of log y against log x over points with positive y.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

/// (2/pi) int_0^r_max |V|^{1/2} for a well profile V >= 0 with V nonincreasing (the
/// operator is -d^2/dr^2 - V).  Throws monotonicity_violation when a sample breaks this.
double calogero_bound(const Potential1D& V, double r_max);

/// int_0^r_max r max(-V, 0) dr for the operator -d^2/dr^2 + V.
double bargmann_bound(const Potential1D& V, double r_max);

struct CmCounts {
  std::int64_t n_left = 0;
  std::int64_t n_right = 0;
};

/// Zero counts of lambda W' and of -4 lambda^2 W^2 on (0, r_max].
CmCounts cm_inequality_check(const SplitPotentials& split, double lambda, double r_max, double rtol = 1e-9);

}  // namespace oscspec
