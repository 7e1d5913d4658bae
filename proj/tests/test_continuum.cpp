#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "oscspec/continuum.hpp"
#include "oscspec/error.hpp"

using namespace oscspec;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

Potential1D square_well(double depth, double width) { return Potential1D::table({{0.0, depth}, {width, 0.0}}); }

}  // namespace

TEST_CASE("zero potential has no zeros and theta follows atan(r)", "[continuum]") {
  const auto res = prufer_count(Potential1D::zero(), 1.0, 200.0);
  CHECK(res.zero_count == 0);
  CHECK_THAT(res.final_theta, WithinAbs(std::atan(200.0), 1e-7));
  CHECK(res.tail_bound_ok);
}

TEST_CASE("square wells match floor(sqrt(lambda) w / pi + 1/2)", "[continuum]") {
  const auto well = square_well(-1.0, std::numbers::pi);
  for (double k : {0.7, 1.3, 2.3, 2.7, 5.2, 11.6}) {
    const auto res = prufer_count(well, k * k, 50.0);
    INFO("sqrt(lambda) = " << k);
    CHECK(res.zero_count == static_cast<std::int64_t>(std::floor(k + 0.5)));
  }
  CHECK(prufer_count(square_well(-1.0, 1.0), 1.0, 20.0).zero_count == 0);
  CHECK(prufer_count(square_well(-1.0, 2.0), 1.0, 20.0).zero_count == 1);
}

TEST_CASE("counts are monotone in the coupling", "[continuum]") {
  const auto V = Potential1D::power(-1.0, 3.0);
  std::int64_t prev = 0;
  for (double lambda = 1.0; lambda <= 3000.0; lambda *= 1.5) {
    const auto c = prufer_count(V, lambda, 200.0).zero_count;
    REQUIRE(c >= prev);
    prev = c;
  }
  CHECK(prev > 5);
}

TEST_CASE("inverse-square wells: critical and supercritical", "[continuum]") {
  CHECK(prufer_count(Potential1D::inverse_square(0.25), 1.0, 1e10).zero_count == 0);
  const auto small = prufer_count(Potential1D::inverse_square(0.5), 1.0, 1e2).zero_count;
  const auto large = prufer_count(Potential1D::inverse_square(0.5), 1.0, 1e10).zero_count;
  CHECK(large >= small + 2);
  CHECK_FALSE(tail_bound_ok(Potential1D::inverse_square(0.5), 1.0, 1e4));
  CHECK(tail_bound_ok(Potential1D::power(-1.0, 3.0), 1.0, 100.0));
}

TEST_CASE("counts respect the Calogero and Bargmann bounds", "[continuum]") {
  for (double lambda : {10.0, 100.0, 1000.0}) {
    const double r_max = 1000.0;
    const auto n = prufer_count(Potential1D::power(-lambda, 3.0), 1.0, r_max).zero_count;
    CHECK(static_cast<double>(n) <= calogero_bound(Potential1D::power(lambda, 3.0), r_max));
    CHECK(static_cast<double>(n) <= bargmann_bound(Potential1D::power(-lambda, 3.0), r_max));
  }
}

TEST_CASE("Calogero bound closed forms", "[continuum]") {
  CHECK(calogero_bound(Potential1D::zero(), 100.0) == 0.0);
  CHECK_THAT(calogero_bound(square_well(1.0, std::numbers::pi), 10.0), WithinAbs(2.0, 1e-12));
  for (double R : {10.0, 1e3, 1e6}) {
    const double exact = 4.0 / std::numbers::pi * (1.0 - 1.0 / std::sqrt(1.0 + R));
    CHECK_THAT(calogero_bound(Potential1D::power(1.0, 3.0), R), WithinRel(exact, 1e-9));
  }
  try {
    calogero_bound(Potential1D::sin_over_power(1.5), 50.0);
    FAIL("expected monotonicity_violation");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::monotonicity_violation);
  }
}

TEST_CASE("Bargmann bound closed forms", "[continuum]") {
  CHECK(bargmann_bound(Potential1D::zero(), 100.0) == 0.0);
  CHECK_THAT(bargmann_bound(square_well(-1.0, std::numbers::pi), 10.0),
             WithinAbs(std::numbers::pi * std::numbers::pi / 2.0, 1e-12));
  CHECK(bargmann_bound(square_well(1.0, 2.0), 10.0) == 0.0);
  for (double R : {10.0, 1e3, 1e6}) {
    const double s = 1.0 + R;
    const double exact = 0.5 - 1.0 / s + 0.5 / (s * s);
    CHECK_THAT(bargmann_bound(Potential1D::power(-1.0, 3.0), R), WithinRel(exact, 1e-9));
  }
}

TEST_CASE("coupling scan helpers", "[continuum]") {
  CHECK_THAT(loglog_slope({1.0, 10.0, 100.0}, {2.0, 2.0 * std::sqrt(10.0), 20.0}), WithinAbs(0.5, 1e-14));
  const auto scan = coupling_scan(Potential1D::power(-1.0, 3.0), {0.0, 1.0, 100.0, 10000.0}, {0.0, 10.0});
  REQUIRE(scan.rows.size() == 4);
  CHECK(scan.rows[0].zero_count == 0);
  CHECK(scan.rows[3].zero_count > scan.rows[2].zero_count);
  CHECK(std::isfinite(scan.slope));
}

TEST_CASE("step cap rule", "[continuum]") {
  CHECK(prufer_step_cap(Potential1D::sin_over_power(1.5), 0.0) == 0.05);
  CHECK(prufer_step_cap(Potential1D::sin_over_power(1.5), 10.0) == 0.1);
  CHECK_THAT(prufer_step_cap(Potential1D::power(-1.0, 2.0), 10.0), WithinAbs(0.55, 1e-15));
}

TEST_CASE("divergence split: W' = phi V and V = V1 + W'", "[continuum]") {
  const auto split = divergence_split(Potential1D::sin_over_power(1.5), 10.0, 500.0);
  const auto& d = *split.split;
  const double h = 0.01;
  for (double r : {3.0, 10.5, 11.3, 37.0, 123.4, 480.0, 800.0}) {
    const double fd = (-d.W(r + 2 * h) + 8 * d.W(r + h) - 8 * d.W(r - h) + d.W(r - 2 * h)) / (12 * h);
    INFO("r = " << r);
    CHECK_THAT(fd, WithinAbs(d.W_prime(r), 1e-8));
    CHECK_THAT(d.V1(r) + d.W_prime(r), WithinAbs(d.base()(r), 1e-15));
    CHECK(split.v1(r) == d.V1(r));
    CHECK(split.w_prime(r) == d.W_prime(r));
  }
  for (double r = 0.0; r < 2000.0; r += 7.3) {
    REQUIRE(std::abs(d.W(r)) <= 3.0 * std::pow(1.0 + std::max(r, 10.0), -1.5));
    REQUIRE(std::abs(d.W(r)) <= d.W_envelope(r));
  }
  CHECK(d.W(5.0) == d.W(0.0));
}

TEST_CASE("divergence split matches the two-term asymptotics", "[continuum]") {
  const double alpha = 1.0;
  const auto split = divergence_split(Potential1D::sin_over_r_alpha(alpha), 5.0, 400.0);
  for (double r = 50.0; r <= 500.0; r += 3.7) {
    const double approx = -std::cos(r) / std::pow(r, alpha) - alpha * std::sin(r) / std::pow(r, alpha + 1.0);
    REQUIRE(std::abs(split.split->W(r) - approx) <= 2.0 * alpha * (alpha + 1.0) * std::pow(r, -alpha - 2.0));
  }
  const auto zero = divergence_split(Potential1D::zero(), 5.0, 100.0);
  for (double r : {0.0, 6.0, 50.0, 1000.0}) CHECK(zero.split->W(r) == 0.0);
  CHECK_THROWS_AS(divergence_split(Potential1D::power(1.0, 2.0), 5.0, 100.0), Error);
}

TEST_CASE("zero counts for the split pieces", "[continuum]") {
  const auto zero = divergence_split(Potential1D::zero(), 5.0, 100.0);
  const auto z = cm_inequality_check(zero, 10.0, 100.0);
  CHECK(z.n_left == 0);
  CHECK(z.n_right == 0);

  const double lambda = 100.0;
  const double R = std::pow(lambda, 1.0 / 1.5);
  const auto split = divergence_split(Potential1D::sin_over_power(1.5), R, 2000.0);
  const auto c = cm_inequality_check(split, lambda, 2000.0);
  CHECK(c.n_left <= c.n_right);

  const auto slow = divergence_split(Potential1D::sin_over_r_alpha(1.0), 5.0, 1000.0);
  const auto a = cm_inequality_check(slow, 0.5, 200.0);
  const auto b = cm_inequality_check(slow, 0.5, 400.0);
  CHECK(a.n_left == b.n_left);
}
