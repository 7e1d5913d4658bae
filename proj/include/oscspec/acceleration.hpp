#pragma once

#include <complex>
#include <cstdint>
#include <functional>

namespace oscspec {

struct OscillatoryTail {
  std::complex<double> value;
  double error_estimate = 0.0;
  std::int64_t terms_used = 0;
};

/// Sums term(j) for j >= first, where the terms carry a phase omega^j times a
/// slowly varying amplitude.  The explicit head [first, N) is summed backwards
/// so tails starting at neighbouring indices telescope to rounding level; the
/// remainder is accelerated by repeated phase-matched averaging of consecutive
/// partial sums, (Q[m+1] - omega Q[m]) / (1 - omega).  For omega = -1 this is
/// plain pairwise (Cesaro) averaging.
///
/// Throws Error{no_convergence} when successive accelerated estimates do not
/// agree to `tol` within `max_terms` evaluated terms.
OscillatoryTail sum_oscillatory_tail(const std::function<std::complex<double>(std::int64_t)>& term,
                                     std::int64_t first, std::complex<double> omega, double tol,
                                     std::int64_t max_terms = std::int64_t{1} << 24);

}  // namespace oscspec
