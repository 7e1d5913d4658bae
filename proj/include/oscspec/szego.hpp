#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "oscspec/sequences.hpp"

namespace oscspec {

/// Values of the solution that equals z^(k - horizon - 1) beyond the horizon,
/// continued down to k = 0 with a_0 = 1, where z = (E - i sqrt(4 - E^2)) / 2.
/// u0 and u1 are stored scaled: the true values are u * exp(log_scale).
struct JostSolution {
  std::complex<double> u0;
  std::complex<double> u1;
  double log_scale = 0.0;
  double max_abs = 0.0;  // max over k of |u(k)| (true scale)

  double log_abs_u0() const;
};

JostSolution jost_solution(const CoefficientSequence& seq, std::int64_t horizon, double E);

/// Weyl m-function of the eventually-free truncation at E + i0, |E| < 2.
/// Im m is taken from the Wronskian, sin(theta) / |u(0)|^2, so it is never negative.
std::complex<double> m_function(const CoefficientSequence& seq, std::int64_t horizon, double E);

/// Im m(E + i0) / pi.
double ac_density(const CoefficientSequence& seq, std::int64_t horizon, double E);

struct SzegoEstimate {
  std::int64_t horizon = 0;
  int quad_nodes = 0;
  double z_value = 0.0;
  double integrand_min = 0.0;
  double integrand_max = 0.0;
  bool edge_flag = false;
  bool shifted_nodes = false;
};

/// Midpoint rule in theta for (1/2pi) int_0^pi log(sin theta / (pi w(2 cos theta))) dtheta.
/// Nodes closer than pi/(4M) to 0 or pi are dropped and flagged.  On a resonance the
/// nodes are shifted by a quarter spacing once before the error is propagated.
SzegoEstimate szego_integral(const CoefficientSequence& seq, std::int64_t horizon, int quad_nodes,
                             unsigned threads = 1);

enum class SzegoVerdict { convergent, divergent, inconclusive };
const char* to_string(SzegoVerdict verdict) noexcept;

struct SzegoScanOptions {
  int quad_nodes = 8192;
  /// Convergent: each of the last three |dZ| is smaller than the previous one divided by this.
  double shrink_factor = 1.0;
  /// Divergent: Z rises by at least this much on each of the last three doublings.
  double divergence_delta = 0.02;
};

struct SzegoScan {
  std::vector<SzegoEstimate> estimates;
  std::vector<double> dz;  // dz[k] = Z[k+1] - Z[k]
  SzegoVerdict verdict = SzegoVerdict::inconclusive;
};

SzegoVerdict classify_szego(const std::vector<double>& dz, const SzegoScanOptions& options);

SzegoScan szego_scan(const CoefficientSequence& seq, const std::vector<std::int64_t>& horizons,
                     const SzegoScanOptions& options = {}, unsigned threads = 1);

}  // namespace oscspec
