#include "oscspec/continuum.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "oscspec/error.hpp"
#include "oscspec/parallel.hpp"

namespace oscspec {

double prufer_step_cap(const Potential1D& V, double r) {
  const double linear = 0.05 * (1.0 + r);
  return V.oscillatory() ? std::min(0.1, linear) : linear;
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

std::vector<double> segment_points(const Potential1D& V, double r_max) {
  std::vector<double> points{0.0};
  for (double p : V.breakpoints()) {
    if (p > 0.0 && p < r_max) points.push_back(p);
  }
  points.push_back(r_max);
  return points;
}

}  // namespace

bool tail_bound_ok(const Potential1D& V, double lambda, double r_max) {
  double r = std::max(r_max, 1e-300);
  for (int k = 0; k < 128; ++k, r *= 2.0) {
    if (std::abs(lambda) * V.envelope(r) * r * r >= 0.125) return false;
  }
  return true;
}

PruferResult prufer_count(const Potential1D& V, double lambda, double r_max, double rtol) {
  if (!(r_max > 0.0) || !std::isfinite(r_max)) throw Error(ErrorCode::invalid_parameters, "r_max must be > 0");
  if (!(rtol > 0.0)) throw Error(ErrorCode::invalid_parameters, "rtol must be > 0");

  auto rhs = [&](double r, double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return c * c - lambda * V(r) * s * s;
  };

  PruferResult result;
  result.lambda = lambda;
  result.r_max = r_max;

  double theta = 0.0;
  double h = 1e-3;
  const auto points = segment_points(V, r_max);
  for (std::size_t seg = 0; seg + 1 < points.size(); ++seg) {
    double r = points[seg];
    const double end = points[seg + 1];
    // Stages are evaluated strictly inside the segment, so jumps at its ends are never sampled across.
    double k1 = rhs(r, theta);
    while (r < end) {
      const double cap = prufer_step_cap(V, r);
      h = std::min({h, cap, end - r});
      const bool last = (end - r) <= h;
      if (last) h = end - r;

      const double k2 = rhs(r + c2 * h, theta + h * (a21 * k1));
      const double k3 = rhs(r + c3 * h, theta + h * (a31 * k1 + a32 * k2));
      const double k4 = rhs(r + c4 * h, theta + h * (a41 * k1 + a42 * k2 + a43 * k3));
      const double k5 = rhs(r + c5 * h, theta + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
      const double k6 = rhs(r + h, theta + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
      const double next = theta + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
      const double r_next = last ? end : r + h;
      const double k7 = rhs(r_next, next);
      const double err = std::abs(h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7));

      const double factor = err > 0.0 ? 0.9 * std::pow(rtol / err, 0.2) : 5.0;
      if (err <= rtol) {
        theta = next;
        r = r_next;
        k1 = k7;
        ++result.steps;
        h *= std::clamp(factor, 0.2, 5.0);
      } else {
        h *= std::clamp(factor, 0.1, 0.9);
        if (h < 1e-14 * (1.0 + r)) {
          throw Error(ErrorCode::step_underflow, "Pruefer step below 1e-14 (1 + r) at r = " + std::to_string(r));
        }
      }
    }
  }

  result.final_theta = theta;
  result.zero_count = static_cast<std::int64_t>(std::floor(theta / std::numbers::pi));
  result.tail_bound_ok = tail_bound_ok(V, lambda, r_max);
  return result;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int n = 0;
  for (std::size_t k = 0; k < x.size() && k < y.size(); ++k) {
    if (!(y[k] > 0.0) || !(x[k] > 0.0)) continue;
    const double lx = std::log(x[k]);
    const double ly = std::log(y[k]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n < 2) return 0.0;
  const double denom = n * sxx - sx * sx;
  return denom == 0.0 ? 0.0 : (n * sxy - sx * sy) / denom;
}

CouplingScan coupling_scan(const Potential1D& V, const std::vector<double>& lambdas, RMaxRule rule, double rtol,
                           unsigned threads) {
  double exponent = rule.exponent;
  if (exponent == 0.0) {
    if (!(V.exponent() > 0.0)) throw Error(ErrorCode::invalid_parameters, "r_max rule needs an explicit exponent");
    exponent = 2.0 / V.exponent();
  }
  for (double l : lambdas) {
    if (!(l >= 0.0) || !std::isfinite(l)) throw Error(ErrorCode::invalid_parameters, "lambdas must be >= 0");
  }

  CouplingScan scan;
  scan.rows.resize(lambdas.size());
  parallel_for(lambdas.size(), threads, [&](std::size_t i) {
    const double lambda = lambdas[i];
    const double r_max = std::max(rule.floor, lambda > 0.0 ? std::pow(lambda, exponent) : 0.0);
    scan.rows[i] = prufer_count(V, lambda, r_max, rtol);
  });

  std::vector<double> x, y;
  for (std::size_t i = lambdas.size() / 2; i < lambdas.size(); ++i) {
    x.push_back(lambdas[i]);
    y.push_back(static_cast<double>(scan.rows[i].zero_count));
  }
  scan.slope = loglog_slope(x, y);
  return scan;
}

namespace {

/// int_0^r_max g(r) dr, split at the potential's breakpoints and on a dyadic radius grid.
template <class F>
double integrate_radial(const Potential1D& V, double r_max, F g) {
  std::vector<double> cuts = segment_points(V, r_max);
  for (double r = 1.0; r < r_max; r *= 2.0) cuts.push_back(r);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    // Oscillatory integrands need subdivision proportional to the chunk length.
    const double a = cuts[k];
    const double b = cuts[k + 1];
    const auto pieces = static_cast<int>(std::ceil((b - a) / 8.0));
    for (int p = 0; p < pieces; ++p) {
      const double lo = a + (b - a) * p / pieces;
      const double hi = a + (b - a) * (p + 1) / pieces;
      total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, lo, hi, 10, 1e-13);
    }
  }
  return total;
}

}  // namespace

double calogero_bound(const Potential1D& V, double r_max) {
  if (!(r_max > 0.0)) throw Error(ErrorCode::invalid_parameters, "r_max must be > 0");
  // Sample on a grid that includes both sides of every breakpoint.
  std::vector<double> samples;
  constexpr int kSamples = 4096;
  for (int k = 0; k <= kSamples; ++k) samples.push_back(r_max * k / kSamples);
  for (double p : V.breakpoints()) {
    if (p < r_max) {
      samples.push_back(std::max(0.0, p - 1e-9 * (1.0 + p)));
      samples.push_back(p);
    }
  }
  std::sort(samples.begin(), samples.end());
  double prev = V(samples.front());
  for (double r : samples) {
    const double v = V(r);
    const double slack = 1e-12 * std::max(1.0, std::abs(v));
    if (v < -slack) {
      throw Error(ErrorCode::monotonicity_violation, "well profile negative at r = " + std::to_string(r));
    }
    if (v > prev + slack) {
      throw Error(ErrorCode::monotonicity_violation, "well profile increases at r = " + std::to_string(r));
    }
    prev = v;
  }
  return 2.0 / std::numbers::pi * integrate_radial(V, r_max, [&](double r) { return std::sqrt(std::max(V(r), 0.0)); });
}

double bargmann_bound(const Potential1D& V, double r_max) {
  if (!(r_max > 0.0)) throw Error(ErrorCode::invalid_parameters, "r_max must be > 0");
  return integrate_radial(V, r_max, [&](double r) { return r * std::max(-V(r), 0.0); });
}

CmCounts cm_inequality_check(const SplitPotentials& split, double lambda, double r_max, double rtol) {
  const auto squared = Potential1D::composite(split.split, 0.0, 0.0, -4.0 * lambda);
  return {prufer_count(split.w_prime, lambda, r_max, rtol).zero_count,
          prufer_count(squared, lambda, r_max, rtol).zero_count};
}

}  // namespace oscspec
