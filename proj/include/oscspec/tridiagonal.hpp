#pragma once

#include <cstddef>
#include <span>
#include <vector>

// Sturm-pivot (LDL^T inertia) routines for real symmetric tridiagonal
// matrices given by their diagonal and one off-diagonal line.  Only squares of
// the off-diagonal enter, so signs and zeros there are allowed.
namespace oscspec::tridiagonal {

/// Gershgorin bound on the spectral radius.
double norm_bound(std::span<const double> diag, std::span<const double> off);

/// Number of eigenvalues strictly greater than t.  A zero pivot is replaced by
/// -64 * eps * norm, which counts an eigenvalue sitting exactly on t as "not above".
std::size_t count_above(std::span<const double> diag, std::span<const double> off, double t,
                        double norm);

/// Number of eigenvalues strictly less than t (pivots of t - T).
std::size_t count_below(std::span<const double> diag, std::span<const double> off, double t,
                        double norm);

/// All eigenvalues in (lo, hi], ascending, each located to an interval of width <= atol.
std::vector<double> eigenvalues_in(std::span<const double> diag, std::span<const double> off,
                                   double lo, double hi, double atol);

/// Smallest eigenvalue to absolute accuracy atol.
double min_eigenvalue(std::span<const double> diag, std::span<const double> off, double atol);

}  // namespace oscspec::tridiagonal
