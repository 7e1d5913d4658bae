#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>

#include "oscspec/error.hpp"
#include "oscspec/spectrum.hpp"

using namespace oscspec;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

TruncatedJacobi random_section(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> b(-3.0, 3.0), a(0.05, 2.5);
  std::vector<double> d(n), o(n - 1);
  for (auto& x : d) x = b(rng);
  for (auto& x : o) x = a(rng);
  return {d, o};
}

std::size_t oracle_above(const std::vector<double>& ev, double t) {
  return static_cast<std::size_t>(std::count_if(ev.begin(), ev.end(), [t](double e) { return e > t; }));
}

}  // namespace

TEST_CASE("free section has no eigenvalues outside the band", "[spectrum]") {
  CHECK(count_above(free_section(5), 0.0) == 2);
  for (std::size_t n : {2u, 10u, 1000u, 100000u}) {
    CHECK(count_above(free_section(n), 2.0) == 0);
    CHECK(count_below(free_section(n), -2.0) == 0);
    CHECK(eigs_outside(free_section(n)).total() == 0);
  }
}

TEST_CASE("Sturm counts agree with the dense oracle on random sections", "[spectrum]") {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<std::size_t> size(2, 300);
  std::uniform_real_distribution<double> thr(-5.0, 5.0);
  for (int trial = 0; trial < 100; ++trial) {
    const auto J = random_section(rng, size(rng));
    const auto ev = dense_oracle(J);
    for (int k = 0; k < 5; ++k) {
      double t = thr(rng);
      // Keep the threshold clear of eigenvalues so rounding cannot flip the count.
      const bool near = std::any_of(ev.begin(), ev.end(), [t](double e) { return std::abs(e - t) < 1e-9; });
      if (near) t += 1e-6;
      REQUIRE(count_above(J, t) == oracle_above(ev, t));
      REQUIRE(count_below(J, t) == ev.size() - oracle_above(ev, t) -
                                       static_cast<std::size_t>(std::count(ev.begin(), ev.end(), t)));
    }
    const auto report = eigs_outside(J);
    REQUIRE(report.count_above == oracle_above(ev, 2.0 + 1e-12));
    for (std::size_t i = 0; i < report.above.size(); ++i) {
      REQUIRE_THAT(report.above[i], WithinAbs(ev[ev.size() - report.above.size() + i], 1e-10));
    }
    for (std::size_t i = 0; i < report.below.size(); ++i) REQUIRE_THAT(report.below[i], WithinAbs(ev[i], 1e-10));
  }
}

TEST_CASE("counts are monotone, symmetric and interlace", "[spectrum]") {
  const auto seq = CoefficientSequence::alternating(0.1, 1.5, 0.4);
  const auto J = truncate(seq, 400);
  std::size_t prev = J.size();
  for (double t = -4.0; t <= 4.0; t += 0.01) {
    const auto c = count_above(J, t);
    REQUIRE(c <= prev);
    prev = c;
    REQUIRE(count_above(J, t) == count_below(flip_sign(J), -t));
  }
  std::size_t last = 0;
  for (std::size_t n = 2; n <= 300; ++n) {
    const auto c = count_above(truncate(seq, n), 2.0);
    REQUIRE(c >= last);
    REQUIRE(c <= last + 1);
    last = c;
  }
}

TEST_CASE("single-site perturbation has the closed-form bound state", "[spectrum]") {
  // b_1 = beta with |beta| > 1 on the half line gives one eigenvalue beta + 1/beta.
  for (double beta : {3.0, -1.5, 2.0}) {
    const auto J = truncate(CoefficientSequence::from_table({{1.0, beta}}), 200);
    const auto report = eigs_outside(J);
    REQUIRE(report.total() == 1);
    const double e = beta > 0 ? report.above[0] : report.below[0];
    CHECK_THAT(e, WithinAbs(beta + 1.0 / beta, 1e-12));
    CHECK_THAT(report.lt_half, WithinAbs(std::sqrt(e * e - 4.0), 1e-11));
    CHECK_THAT(report.lt_alpha.at(1.0), WithinAbs(std::abs(e) - 2.0, 1e-12));
    CHECK_THAT(report.lt_alpha.at(1.5), WithinRel(std::pow(std::abs(e) - 2.0, 1.5), 1e-11));
  }
}

TEST_CASE("dense oracle guards its size", "[spectrum][errors]") {
  const auto ev = dense_oracle(free_section(2));
  CHECK_THAT(ev[0], WithinAbs(-1.0, 1e-15));
  CHECK_THAT(ev[1], WithinAbs(1.0, 1e-15));
  CHECK_NOTHROW(dense_oracle(free_section(kDenseOracleLimit)));
  try {
    dense_oracle(free_section(kDenseOracleLimit + 1));
    FAIL("expected size_exceeded");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::size_exceeded);
  }
}

TEST_CASE("classify_counts", "[spectrum]") {
  CHECK(classify_counts({0, 0, 0}) == CountVerdict::stabilized);
  CHECK(classify_counts({1, 4, 4, 4}) == CountVerdict::stabilized);
  CHECK(classify_counts({3, 4, 5, 5}) == CountVerdict::growing);
  CHECK(classify_counts({4, 3, 5}) == CountVerdict::inconclusive);
  CHECK(classify_counts({4, 4}) == CountVerdict::inconclusive);
}

TEST_CASE("count_scan on known families", "[spectrum]") {
  const std::vector<std::size_t> sizes{1000, 10000, 100000};
  const auto free = count_scan(CoefficientSequence::free_family(), sizes);
  CHECK(free.verdict == CountVerdict::stabilized);
  for (const auto& row : free.rows) CHECK(row.count_above + row.count_below == 0);

  const auto inv = count_scan(CoefficientSequence::inverse_square(0.0, 0.2), sizes);
  CHECK(inv.verdict == CountVerdict::stabilized);
  CHECK(inv.rows.back().count_above + inv.rows.back().count_below == 0);

  const auto single = count_scan(CoefficientSequence::from_table({{1.0, 3.0}}), sizes, 2);
  CHECK(single.verdict == CountVerdict::stabilized);
  CHECK(single.rows.front().count_above == 1);
  REQUIRE(single.rows.size() == 3);
  CHECK(single.rows[1].n == 10000);
}
