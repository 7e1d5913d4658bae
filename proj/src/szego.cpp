#include "oscspec/szego.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "oscspec/error.hpp"
#include "oscspec/parallel.hpp"

namespace oscspec {

namespace {

constexpr double kRescaleAbove = 1e100;
constexpr int kRescaleStride = 32;
constexpr double kResonanceLog = -690.0;  // |u(0)| < 1e-300
constexpr std::size_t kLanes = 8;

/// a[k] for k = 0..h with a[0] = 1, b[k] for k = 1..h (b[0] unused).
struct Coefficients {
  std::vector<double> a;
  std::vector<double> inv_a;
  std::vector<double> b;
};

Coefficients load(const CoefficientSequence& seq, std::int64_t horizon) {
  if (horizon < 0) throw Error(ErrorCode::invalid_parameters, "horizon must be >= 0");
  const SequenceEvaluator ev(seq);
  const auto h = static_cast<std::size_t>(horizon);
  Coefficients c;
  c.a.assign(h + 2, 1.0);
  c.b.assign(h + 2, 0.0);
  for (std::size_t k = 1; k <= h; ++k) {
    const auto [a, b] = ev(static_cast<std::int64_t>(k));
    c.a[k] = a;
    c.b[k] = b;
  }
  c.inv_a.resize(c.a.size());
  for (std::size_t k = 0; k < c.a.size(); ++k) c.inv_a[k] = 1.0 / c.a[k];
  return c;
}

struct LaneResult {
  std::complex<double> u0;
  std::complex<double> u1;
  double log_scale = 0.0;
  double log_max = -std::numeric_limits<double>::infinity();
};

/// Downward recursion for up to kLanes energies at once, real and imaginary parts
/// kept in separate arrays so the inner loop vectorizes.
void jost_lanes(const Coefficients& c, const double* E, std::size_t lanes, LaneResult* out, bool track_max) {
  const std::size_t h = c.a.size() - 2;
  std::array<double, kLanes> e{}, cr{}, ci{}, nr{}, ni{}, scale{};
  for (std::size_t l = 0; l < kLanes; ++l) {
    e[l] = l < lanes ? E[l] : 0.0;
    const double s = std::sqrt(std::max(0.0, 4.0 - e[l] * e[l]));
    cr[l] = 1.0;
    ci[l] = 0.0;
    nr[l] = 0.5 * e[l];
    ni[l] = -0.5 * s;
  }
  std::array<double, kLanes> log_max{};
  log_max.fill(0.0);

  int since_check = 0;
  for (std::size_t k = h + 1; k-- > 0;) {
    const double bk1 = c.b[k + 1];
    const double ak1 = c.a[k + 1];
    const double inv = c.inv_a[k];
    for (std::size_t l = 0; l < kLanes; ++l) {
      const double diff = e[l] - bk1;
      const double ur = (diff * cr[l] - ak1 * nr[l]) * inv;
      const double ui = (diff * ci[l] - ak1 * ni[l]) * inv;
      nr[l] = cr[l];
      ni[l] = ci[l];
      cr[l] = ur;
      ci[l] = ui;
    }
    if (track_max) {
      for (std::size_t l = 0; l < lanes; ++l) {
        const double m = 0.5 * std::log(cr[l] * cr[l] + ci[l] * ci[l]) + scale[l];
        log_max[l] = std::max(log_max[l], m);
      }
    }
    if (++since_check == kRescaleStride || k == 0) {
      since_check = 0;
      for (std::size_t l = 0; l < kLanes; ++l) {
        const double mag = std::hypot(cr[l], ci[l]);
        if (mag > kRescaleAbove) {
          const double inv_mag = 1.0 / mag;
          cr[l] *= inv_mag;
          ci[l] *= inv_mag;
          nr[l] *= inv_mag;
          ni[l] *= inv_mag;
          scale[l] += std::log(mag);
        }
      }
    }
  }
  for (std::size_t l = 0; l < lanes; ++l) {
    out[l].u0 = {cr[l], ci[l]};
    out[l].u1 = {nr[l], ni[l]};
    out[l].log_scale = scale[l];
    out[l].log_max = log_max[l];
  }
}

void require_in_band(double E) {
  if (!(std::abs(E) < 2.0)) throw Error(ErrorCode::invalid_parameters, "E must lie in (-2, 2)");
}

std::complex<double> m_from(const LaneResult& r, double E) {
  const double sin_theta = 0.5 * std::sqrt((2.0 - E) * (2.0 + E));
  const double log_u0 = std::log(std::abs(r.u0)) + r.log_scale;
  if (!(log_u0 > kResonanceLog)) throw Error(ErrorCode::resonance, "|u(0)| below 1e-300");
  const double re = (-r.u1 / r.u0).real();
  return {re, sin_theta * std::exp(-2.0 * log_u0)};
}

}  // namespace

double JostSolution::log_abs_u0() const { return std::log(std::abs(u0)) + log_scale; }

JostSolution jost_solution(const CoefficientSequence& seq, std::int64_t horizon, double E) {
  require_in_band(E);
  const auto c = load(seq, horizon);
  LaneResult r;
  jost_lanes(c, &E, 1, &r, true);
  return {r.u0, r.u1, r.log_scale, std::exp(std::max(r.log_max, 0.0))};
}

std::complex<double> m_function(const CoefficientSequence& seq, std::int64_t horizon, double E) {
  require_in_band(E);
  const auto c = load(seq, horizon);
  LaneResult r;
  jost_lanes(c, &E, 1, &r, false);
  return m_from(r, E);
}

double ac_density(const CoefficientSequence& seq, std::int64_t horizon, double E) {
  return m_function(seq, horizon, E).imag() / std::numbers::pi;
}

namespace {

/// Integrand values 2 log|u(0)| at the given angles, kLanes energies per pass.
std::vector<double> integrand_at(const Coefficients& c, const std::vector<double>& thetas, unsigned threads) {
  std::vector<double> values(thetas.size());
  const std::size_t batches = (thetas.size() + kLanes - 1) / kLanes;
  parallel_for(batches, threads, [&](std::size_t batch) {
    const std::size_t first = batch * kLanes;
    const std::size_t lanes = std::min(kLanes, thetas.size() - first);
    std::array<double, kLanes> energies{};
    for (std::size_t l = 0; l < lanes; ++l) energies[l] = 2.0 * std::cos(thetas[first + l]);
    std::array<LaneResult, kLanes> results;
    jost_lanes(c, energies.data(), lanes, results.data(), false);
    for (std::size_t l = 0; l < lanes; ++l) {
      const double log_u0 = std::log(std::abs(results[l].u0)) + results[l].log_scale;
      if (!(log_u0 > kResonanceLog)) throw Error(ErrorCode::resonance, "|u(0)| below 1e-300");
      values[first + l] = 2.0 * log_u0;
    }
  });
  return values;
}

SzegoEstimate integrate(const Coefficients& c, std::int64_t horizon, int M, double offset, unsigned threads) {
  const double spacing = std::numbers::pi / M;
  const double guard = std::numbers::pi / (4.0 * M);
  SzegoEstimate est;
  est.horizon = horizon;
  est.quad_nodes = M;

  std::vector<double> thetas;
  thetas.reserve(static_cast<std::size_t>(M));
  for (int j = 0; j < M; ++j) {
    const double theta = (j + offset) * spacing;
    if (theta <= guard || theta >= std::numbers::pi - guard) {
      est.edge_flag = true;
      continue;
    }
    thetas.push_back(theta);
  }
  const auto values = integrand_at(c, thetas, threads);

  // Ascending-theta accumulation keeps the result independent of the thread count.
  double sum = 0.0;
  est.integrand_min = std::numeric_limits<double>::infinity();
  est.integrand_max = -std::numeric_limits<double>::infinity();
  for (double v : values) {
    sum += v;
    est.integrand_min = std::min(est.integrand_min, v);
    est.integrand_max = std::max(est.integrand_max, v);
  }
  est.z_value = sum / (2.0 * M);
  return est;
}

}  // namespace

SzegoEstimate szego_integral(const CoefficientSequence& seq, std::int64_t horizon, int quad_nodes,
                             unsigned threads) {
  if (quad_nodes < 16) throw Error(ErrorCode::invalid_parameters, "quad_nodes must be >= 16");
  const auto c = load(seq, horizon);
  try {
    return integrate(c, horizon, quad_nodes, 0.5, threads);
  } catch (const Error& err) {
    if (err.code() != ErrorCode::resonance) throw;
  }
  auto est = integrate(c, horizon, quad_nodes, 0.75, threads);
  est.shifted_nodes = true;
  return est;
}

const char* to_string(SzegoVerdict verdict) noexcept {
  switch (verdict) {
    case SzegoVerdict::convergent: return "convergent";
    case SzegoVerdict::divergent: return "divergent";
    case SzegoVerdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

SzegoVerdict classify_szego(const std::vector<double>& dz, const SzegoScanOptions& options) {
  if (dz.size() < 3) return SzegoVerdict::inconclusive;
  const auto tail = dz.end() - 3;
  bool shrinking = true;
  for (auto it = tail + 1; it != dz.end(); ++it) {
    shrinking = shrinking && std::abs(*it) * options.shrink_factor < std::abs(*(it - 1));
  }
  if (shrinking) return SzegoVerdict::convergent;
  if (std::all_of(tail, dz.end(), [&](double d) { return d >= options.divergence_delta; })) {
    return SzegoVerdict::divergent;
  }
  return SzegoVerdict::inconclusive;
}

SzegoScan szego_scan(const CoefficientSequence& seq, const std::vector<std::int64_t>& horizons,
                     const SzegoScanOptions& options, unsigned threads) {
  if (!std::is_sorted(horizons.begin(), horizons.end())) {
    throw Error(ErrorCode::invalid_parameters, "horizons must be ascending");
  }
  SzegoScan scan;
  for (auto h : horizons) scan.estimates.push_back(szego_integral(seq, h, options.quad_nodes, threads));
  for (std::size_t k = 1; k < scan.estimates.size(); ++k) {
    scan.dz.push_back(scan.estimates[k].z_value - scan.estimates[k - 1].z_value);
  }
  scan.verdict = classify_szego(scan.dz, options);
  return scan;
}

}  // namespace oscspec
