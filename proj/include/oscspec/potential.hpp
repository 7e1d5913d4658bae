#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace oscspec {

enum class PotentialKind {
  sin_over_power,    // sin(r) (1 + r)^-beta
  sin_over_r_alpha,  // f(r) sin(r) r^-alpha, f a smoothstep from 0 on [0,1] to 1 on [2, inf)
  inverse_square,    // -gamma / x^2 for x > x0, 0 before
  x_gamma,           // -1/(4x^2) - gamma chi_(2,inf)(x) / (x^2 log^2 x) for x > x0, 0 before
  power,             // c (1 + r)^-p
  table,             // piecewise constant
  composite,         // s1 V + s2 W' + s3 W^2 for a divergence split (V, W)
};

const char* to_string(PotentialKind kind) noexcept;
std::optional<PotentialKind> potential_kind_from_string(const std::string& name);

/// V(r) = value on [start, next start); zero before the first start and after the
/// last step, whose value must be 0.
struct PotentialStep {
  double start = 0.0;
  double value = 0.0;
};

class DivergenceSplit;

class Potential1D {
 public:
  static Potential1D zero();
  static Potential1D sin_over_power(double beta);
  static Potential1D sin_over_r_alpha(double alpha);
  static Potential1D inverse_square(double gamma, double x0 = 1.0);
  static Potential1D x_gamma(double gamma, double x0 = 1.0);
  static Potential1D power(double coefficient, double p);
  static Potential1D table(std::vector<PotentialStep> steps);
  static Potential1D composite(std::shared_ptr<const DivergenceSplit> split, double s1, double s2, double s3);

  double operator()(double r) const;

  /// Radii where V or its low derivatives jump; integrators restart there.
  std::vector<double> breakpoints() const;

  /// sup_{s >= r} |V(s)|, or an upper bound for it.
  double envelope(double r) const;

  /// True when V oscillates on the unit scale (sin kinds and splits of them).
  bool oscillatory() const;

  PotentialKind kind() const noexcept { return kind_; }
  double exponent() const noexcept { return exponent_; }
  double gamma() const noexcept { return gamma_; }
  double x0() const noexcept { return x0_; }
  double coefficient() const noexcept { return coefficient_; }
  const std::vector<PotentialStep>& steps() const noexcept { return steps_; }

 private:
  PotentialKind kind_ = PotentialKind::table;
  double exponent_ = 0.0;     // beta, alpha or p
  double gamma_ = 0.0;
  double x0_ = 0.0;
  double coefficient_ = 1.0;  // power amplitude
  std::vector<PotentialStep> steps_;
  std::shared_ptr<const DivergenceSplit> split_;
  double s1_ = 0.0, s2_ = 0.0, s3_ = 0.0;
};

/// phi_R(r) = 3t^2 - 2t^3 with t = clamp(r - R, 0, 1).
double smooth_ramp(double r, double R);

/// V = V1 + W' with W(r) = -int_r^inf phi_R(s) V(s) ds and V1 = (1 - phi_R) V.
/// W is tabulated at multiples of pi up to table_end; the far tail is an accelerated
/// alternating sum of half-period integrals.
class DivergenceSplit {
 public:
  DivergenceSplit(Potential1D base, double R, double table_end, double tail_tol = 1e-12);

  double R() const noexcept { return R_; }
  const Potential1D& base() const noexcept { return base_; }

  double W(double r) const;
  double W_prime(double r) const { return smooth_ramp(r, R_) * base_(r); }
  double V1(double r) const { return (1.0 - smooth_ramp(r, R_)) * base_(r); }
  /// Bound on sup_{s >= r} |W(s)|.
  double W_envelope(double r) const;

 private:
  double half_period_integral(double a, double b) const;
  double tail_from_node(std::size_t k) const;

  Potential1D base_;
  double R_;
  double tail_tol_;
  std::vector<double> node_tail_;  // node_tail_[k] = int_{k pi}^inf phi_R V
};

struct SplitPotentials {
  std::shared_ptr<const DivergenceSplit> split;
  Potential1D v1;       // (1 - phi_R) V
  Potential1D w_prime;  // phi_R V
};

/// Requires a sin kind or the zero potential; throws invalid_parameters otherwise.
SplitPotentials divergence_split(const Potential1D& V, double R, double table_end);

}  // namespace oscspec
