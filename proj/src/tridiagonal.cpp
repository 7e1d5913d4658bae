#include "oscspec/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

namespace oscspec::tridiagonal {

namespace {

double pivot_floor(double norm) {
  return 64.0 * std::numeric_limits<double>::epsilon() * std::max(norm, 1.0);
}

}  // namespace

double norm_bound(std::span<const double> diag, std::span<const double> off) {
  double bound = 0.0;
  const std::size_t n = diag.size();
  for (std::size_t k = 0; k < n; ++k) {
    double row = std::abs(diag[k]);
    if (k > 0) row += std::abs(off[k - 1]);
    if (k + 1 < n) row += std::abs(off[k]);
    bound = std::max(bound, row);
  }
  return bound;
}

std::size_t count_above(std::span<const double> diag, std::span<const double> off, double t,
                        double norm) {
  const double floor = pivot_floor(norm);
  std::size_t count = 0;
  double d = diag[0] - t;
  if (d == 0.0) d = -floor;
  count += d > 0.0;
  for (std::size_t k = 1; k < diag.size(); ++k) {
    d = (diag[k] - t) - off[k - 1] * off[k - 1] / d;
    if (d == 0.0) d = -floor;
    count += d > 0.0;
  }
  return count;
}

std::size_t count_below(std::span<const double> diag, std::span<const double> off, double t,
                        double norm) {
  const double floor = pivot_floor(norm);
  std::size_t count = 0;
  double d = t - diag[0];
  if (d == 0.0) d = -floor;
  count += d > 0.0;
  for (std::size_t k = 1; k < diag.size(); ++k) {
    d = (t - diag[k]) - off[k - 1] * off[k - 1] / d;
    if (d == 0.0) d = -floor;
    count += d > 0.0;
  }
  return count;
}

std::vector<double> eigenvalues_in(std::span<const double> diag, std::span<const double> off,
                                   double lo, double hi, double atol) {
  std::vector<double> found;
  if (diag.empty() || !(hi > lo)) return found;
  const double norm = norm_bound(diag, off);

  // (lo, hi, count_above(lo), count_above(hi)); the interval holds c_lo - c_hi eigenvalues.
  std::vector<std::tuple<double, double, std::size_t, std::size_t>> stack;
  stack.emplace_back(lo, hi, count_above(diag, off, lo, norm), count_above(diag, off, hi, norm));
  while (!stack.empty()) {
    auto [a, b, ca, cb] = stack.back();
    stack.pop_back();
    if (ca <= cb) continue;
    const double mid = 0.5 * (a + b);
    if (b - a <= atol || mid <= a || mid >= b) {
      found.insert(found.end(), ca - cb, mid);
      continue;
    }
    const std::size_t cm = count_above(diag, off, mid, norm);
    stack.emplace_back(a, mid, ca, cm);
    stack.emplace_back(mid, b, cm, cb);
  }
  std::sort(found.begin(), found.end());
  return found;
}

double min_eigenvalue(std::span<const double> diag, std::span<const double> off, double atol) {
  const double norm = norm_bound(diag, off);
  double lo = -norm - 1.0;
  double hi = norm + 1.0;
  while (hi - lo > atol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (count_below(diag, off, mid, norm) >= 1) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace oscspec::tridiagonal
