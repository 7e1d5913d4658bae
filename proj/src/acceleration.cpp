#include "oscspec/acceleration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "oscspec/error.hpp"

namespace oscspec {

namespace {

constexpr std::int64_t kAlign = 64;
constexpr std::size_t kWindow = 24;

std::int64_t aligned_start(std::int64_t first, std::int64_t offset) {
  const std::int64_t target = first + offset;
  return ((target + kAlign - 1) / kAlign) * kAlign;
}

}  // namespace

OscillatoryTail sum_oscillatory_tail(const std::function<std::complex<double>(std::int64_t)>& term,
                                     std::int64_t first, std::complex<double> omega, double tol,
                                     std::int64_t max_terms) {
  if (std::abs(1.0 - omega) < 1e-8) {
    throw Error(ErrorCode::invalid_parameters, "phase factor too close to 1 for averaging acceleration");
  }
  const std::complex<double> inv_denominator = 1.0 / (1.0 - omega);

  std::int64_t offset = 32;
  double best_seen = std::numeric_limits<double>::infinity();
  while (true) {
    const std::int64_t start = aligned_start(first, offset);
    const std::int64_t used = start - first + static_cast<std::int64_t>(kWindow);
    if (used > max_terms) {
      throw Error(ErrorCode::no_convergence,
                  "oscillatory tail did not settle (best estimate spread " + std::to_string(best_seen) + ")");
    }

    std::complex<double> head{0.0, 0.0};
    for (std::int64_t j = start - 1; j >= first; --j) head += term(j);

    std::vector<std::complex<double>> row(kWindow + 1);
    row[0] = {0.0, 0.0};
    for (std::size_t m = 1; m <= kWindow; ++m) {
      row[m] = row[m - 1] + term(start + static_cast<std::int64_t>(m) - 1);
    }

    std::vector<std::complex<double>> estimates{row.back()};
    double best_err = std::numeric_limits<double>::infinity();
    std::complex<double> best = row.back();
    while (row.size() > 1) {
      for (std::size_t i = 0; i + 1 < row.size(); ++i) {
        row[i] = (row[i + 1] - omega * row[i]) * inv_denominator;
      }
      row.pop_back();
      estimates.push_back(row.back());
      const std::size_t k = estimates.size() - 1;
      if (k >= 2) {
        const double err = std::max(std::abs(estimates[k] - estimates[k - 1]),
                                    std::abs(estimates[k - 1] - estimates[k - 2]));
        if (err < best_err) {
          best_err = err;
          best = estimates[k];
        }
      }
    }
    best_seen = std::min(best_seen, best_err);

    const double scale = std::max(1.0, std::abs(head + best));
    if (best_err <= tol * scale || best_err == 0.0) {
      return {head + best, best_err, used};
    }
    offset *= 4;
  }
}

}  // namespace oscspec
