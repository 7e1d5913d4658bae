#include "oscspec/potential.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <numbers>

#include "oscspec/acceleration.hpp"
#include "oscspec/error.hpp"

namespace oscspec {

namespace {

constexpr std::pair<PotentialKind, const char*> kKindNames[] = {
    {PotentialKind::sin_over_power, "sin-over-power"},
    {PotentialKind::sin_over_r_alpha, "sin-over-r-alpha"},
    {PotentialKind::inverse_square, "inverse-square"},
    {PotentialKind::x_gamma, "x-gamma"},
    {PotentialKind::power, "power"},
    {PotentialKind::table, "table"},
    {PotentialKind::composite, "composite"},
};

double smoothstep01(double t) {
  t = std::clamp(t, 0.0, 1.0);
  return t * t * (3.0 - 2.0 * t);
}

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::invalid_parameters, what);
}

}  // namespace

const char* to_string(PotentialKind kind) noexcept {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::optional<PotentialKind> potential_kind_from_string(const std::string& name) {
  for (const auto& [k, label] : kKindNames) {
    if (name == label) return k;
  }
  return std::nullopt;
}

double smooth_ramp(double r, double R) { return smoothstep01(r - R); }

Potential1D Potential1D::zero() { return table({}); }

Potential1D Potential1D::sin_over_power(double beta) {
  require(std::isfinite(beta) && beta > 0.0, "beta must be positive");
  Potential1D v;
  v.kind_ = PotentialKind::sin_over_power;
  v.exponent_ = beta;
  return v;
}

Potential1D Potential1D::sin_over_r_alpha(double alpha) {
  require(std::isfinite(alpha) && alpha > 0.0, "alpha must be positive");
  Potential1D v;
  v.kind_ = PotentialKind::sin_over_r_alpha;
  v.exponent_ = alpha;
  return v;
}

Potential1D Potential1D::inverse_square(double gamma, double x0) {
  require(std::isfinite(gamma) && std::isfinite(x0) && x0 > 0.0, "inverse-square needs finite gamma and x0 > 0");
  Potential1D v;
  v.kind_ = PotentialKind::inverse_square;
  v.gamma_ = gamma;
  v.x0_ = x0;
  return v;
}

Potential1D Potential1D::x_gamma(double gamma, double x0) {
  require(std::isfinite(gamma) && std::isfinite(x0) && x0 > 0.0, "x-gamma needs finite gamma and x0 > 0");
  Potential1D v;
  v.kind_ = PotentialKind::x_gamma;
  v.gamma_ = gamma;
  v.x0_ = x0;
  return v;
}

Potential1D Potential1D::power(double coefficient, double p) {
  require(std::isfinite(coefficient) && std::isfinite(p) && p > 0.0, "power needs finite c and p > 0");
  Potential1D v;
  v.kind_ = PotentialKind::power;
  v.coefficient_ = coefficient;
  v.exponent_ = p;
  return v;
}

Potential1D Potential1D::table(std::vector<PotentialStep> steps) {
  for (std::size_t k = 0; k < steps.size(); ++k) {
    require(std::isfinite(steps[k].start) && std::isfinite(steps[k].value), "table entries must be finite");
    require(steps[k].start >= 0.0, "table radii must be >= 0");
    if (k > 0) require(steps[k].start > steps[k - 1].start, "table radii must increase");
  }
  require(steps.empty() || steps.back().value == 0.0, "last table step must have value 0");
  Potential1D v;
  v.kind_ = PotentialKind::table;
  v.steps_ = std::move(steps);
  return v;
}

Potential1D Potential1D::composite(std::shared_ptr<const DivergenceSplit> split, double s1, double s2, double s3) {
  require(split != nullptr, "composite needs a split");
  Potential1D v;
  v.kind_ = PotentialKind::composite;
  v.split_ = std::move(split);
  v.s1_ = s1;
  v.s2_ = s2;
  v.s3_ = s3;
  return v;
}

double Potential1D::operator()(double r) const {
  switch (kind_) {
    case PotentialKind::sin_over_power:
      return std::sin(r) * std::pow(1.0 + r, -exponent_);
    case PotentialKind::sin_over_r_alpha:
      if (r <= 1.0) return 0.0;
      return smoothstep01(r - 1.0) * std::sin(r) * std::pow(r, -exponent_);
    case PotentialKind::inverse_square:
      return r > x0_ ? -gamma_ / (r * r) : 0.0;
    case PotentialKind::x_gamma: {
      if (r <= x0_) return 0.0;
      double v = -0.25 / (r * r);
      if (r > 2.0) {
        const double l = std::log(r);
        v -= gamma_ / (r * r * l * l);
      }
      return v;
    }
    case PotentialKind::power:
      return coefficient_ * std::pow(1.0 + r, -exponent_);
    case PotentialKind::table: {
      auto it = std::upper_bound(steps_.begin(), steps_.end(), r,
                                 [](double x, const PotentialStep& s) { return x < s.start; });
      return it == steps_.begin() ? 0.0 : std::prev(it)->value;
    }
    case PotentialKind::composite: {
      double v = 0.0;
      const auto& base = split_->base();
      const double phi = smooth_ramp(r, split_->R());
      if (s1_ != 0.0 || s2_ != 0.0) {
        const double vb = base(r);
        v += s1_ * vb + s2_ * phi * vb;
      }
      if (s3_ != 0.0) {
        const double w = split_->W(r);
        v += s3_ * w * w;
      }
      return v;
    }
  }
  return 0.0;
}

std::vector<double> Potential1D::breakpoints() const {
  std::vector<double> points;
  switch (kind_) {
    case PotentialKind::sin_over_r_alpha:
      points = {1.0, 2.0};
      break;
    case PotentialKind::inverse_square:
      points = {x0_};
      break;
    case PotentialKind::x_gamma:
      points = {x0_, 2.0};
      break;
    case PotentialKind::table:
      for (const auto& s : steps_) points.push_back(s.start);
      break;
    case PotentialKind::composite:
      points = split_->base().breakpoints();
      points.push_back(split_->R());
      points.push_back(split_->R() + 1.0);
      break;
    default:
      break;
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

double Potential1D::envelope(double r) const {
  switch (kind_) {
    case PotentialKind::sin_over_power:
      return std::pow(1.0 + r, -exponent_);
    case PotentialKind::sin_over_r_alpha:
      return std::pow(std::max(r, 1.0), -exponent_);
    case PotentialKind::inverse_square: {
      const double x = std::max(r, x0_);
      return std::abs(gamma_) / (x * x);
    }
    case PotentialKind::x_gamma: {
      const double x = std::max(r, x0_);
      double bound = 0.25 / (x * x);
      // 1/(x^2 log^2 x) decreases for x > 1; on (2, inf) its sup sits at max(x, 2).
      const double y = std::max(x, 2.0);
      const double l = std::log(y);
      bound += std::abs(gamma_) / (y * y * l * l);
      return bound;
    }
    case PotentialKind::power:
      return std::abs(coefficient_) * std::pow(1.0 + r, -exponent_);
    case PotentialKind::table: {
      double sup = 0.0;
      for (std::size_t k = 0; k < steps_.size(); ++k) {
        const double end = k + 1 < steps_.size() ? steps_[k + 1].start : INFINITY;
        if (end > r) sup = std::max(sup, std::abs(steps_[k].value));
      }
      return sup;
    }
    case PotentialKind::composite: {
      const double v = split_->base().envelope(r);
      const double w = split_->W_envelope(r);
      return (std::abs(s1_) + std::abs(s2_)) * v + std::abs(s3_) * w * w;
    }
  }
  return 0.0;
}

bool Potential1D::oscillatory() const {
  switch (kind_) {
    case PotentialKind::sin_over_power:
    case PotentialKind::sin_over_r_alpha:
      return true;
    case PotentialKind::composite:
      return split_->base().oscillatory();
    default:
      return false;
  }
}

// ---------------------------------------------------------------------------

DivergenceSplit::DivergenceSplit(Potential1D base, double R, double table_end, double tail_tol)
    : base_(std::move(base)), R_(R), tail_tol_(tail_tol) {
  require(std::isfinite(R) && R >= 0.0, "split radius must be >= 0");
  require(std::isfinite(table_end) && table_end >= 0.0, "table_end must be finite");
  const bool supported = base_.kind() == PotentialKind::sin_over_power ||
                         base_.kind() == PotentialKind::sin_over_r_alpha ||
                         (base_.kind() == PotentialKind::table && base_.steps().empty());
  require(supported, "divergence_split needs a sin-over-power potential or zero");

  const double pi = std::numbers::pi;
  const auto last = static_cast<std::size_t>(std::ceil(std::max(table_end, R + 1.0 + pi) / pi));
  node_tail_.assign(last + 1, 0.0);
  node_tail_[last] = tail_from_node(last);
  for (std::size_t k = last; k-- > 0;) {
    node_tail_[k] = node_tail_[k + 1] + half_period_integral(k * pi, (k + 1) * pi);
  }
}

double DivergenceSplit::half_period_integral(double a, double b) const {
  if (!(b > a)) return 0.0;
  std::vector<double> cuts{a};
  for (double p : base_.breakpoints()) {
    if (p > a && p < b) cuts.push_back(p);
  }
  for (double p : {R_, R_ + 1.0}) {
    if (p > a && p < b) cuts.push_back(p);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.push_back(b);
  auto integrand = [this](double s) { return smooth_ramp(s, R_) * base_(s); };
  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    sum += boost::math::quadrature::gauss<double, 20>::integrate(integrand, cuts[k], cuts[k + 1]);
  }
  return sum;
}

double DivergenceSplit::tail_from_node(std::size_t k) const {
  const double pi = std::numbers::pi;
  auto term = [this, pi](std::int64_t j) {
    const auto jd = static_cast<double>(j);
    return std::complex<double>(half_period_integral(jd * pi, (jd + 1.0) * pi), 0.0);
  };
  return sum_oscillatory_tail(term, static_cast<std::int64_t>(k), {-1.0, 0.0}, tail_tol_).value.real();
}

double DivergenceSplit::W(double r) const {
  const double pi = std::numbers::pi;
  if (r < 0.0) r = 0.0;
  const auto k = static_cast<std::size_t>(std::floor(r / pi));
  if (k + 1 < node_tail_.size()) {
    return -(half_period_integral(r, (k + 1) * pi) + node_tail_[k + 1]);
  }
  const auto m = static_cast<std::size_t>(std::ceil(r / pi));
  return -(half_period_integral(r, m * pi) + tail_from_node(m));
}

double DivergenceSplit::W_envelope(double r) const { return 3.0 * base_.envelope(std::max(r, R_)); }

SplitPotentials divergence_split(const Potential1D& V, double R, double table_end) {
  auto split = std::make_shared<const DivergenceSplit>(V, R, table_end);
  SplitPotentials out{split, Potential1D::composite(split, 1.0, -1.0, 0.0),
                      Potential1D::composite(split, 0.0, 1.0, 0.0)};
  return out;
}

}  // namespace oscspec
