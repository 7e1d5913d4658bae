#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "oscspec/error.hpp"
#include "oscspec/operator.hpp"
#include "oscspec/spectrum.hpp"

using namespace oscspec;
using Catch::Matchers::WithinAbs;

namespace {

Eigen::MatrixXd dense(const TruncatedJacobi& J) {
  const auto n = static_cast<Eigen::Index>(J.size());
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) M(i, i) = J.diag()[i];
  for (Eigen::Index i = 0; i + 1 < n; ++i) M(i, i + 1) = M(i + 1, i) = J.offdiag()[i];
  return M;
}

TruncatedJacobi random_section(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> b(-3.0, 3.0), a(0.1, 2.0);
  std::vector<double> d(n), o(n - 1);
  for (auto& x : d) x = b(rng);
  for (auto& x : o) x = a(rng);
  return {d, o};
}

}  // namespace

TEST_CASE("truncate lays out diagonal and off-diagonal", "[operator]") {
  const auto J = truncate(CoefficientSequence::alternating(0.0, 1.0, 1.0), 3);
  REQUIRE(J.size() == 3);
  CHECK(J.diag()[0] == -1.0);
  CHECK(J.diag()[1] == 0.5);
  CHECK_THAT(J.diag()[2], WithinAbs(-1.0 / 3.0, 1e-16));
  CHECK(J.offdiag().size() == 2);
  CHECK(J.offdiag()[0] == 1.0);
  CHECK(truncate(CoefficientSequence::free_family(), 5) == free_section(5));
  CHECK_THROWS_AS(truncate(CoefficientSequence::free_family(), 1), Error);
  CHECK_THROWS_AS(TruncatedJacobi({0.0, 0.0}, {-1.0}), Error);
  CHECK_THROWS_AS(TruncatedJacobi({0.0, 0.0}, {1.0, 1.0}), Error);
}

TEST_CASE("free section eigenvalues are 2 cos(k pi / (n + 1))", "[operator]") {
  for (std::size_t n : {2u, 5u, 17u, 100u}) {
    const auto ev = dense_oracle(free_section(n));
    for (std::size_t k = 1; k <= n; ++k) {
      const double exact = 2.0 * std::cos(std::numbers::pi * static_cast<double>(k) / static_cast<double>(n + 1));
      CHECK_THAT(ev[n - k], WithinAbs(exact, 1e-12));
    }
  }
}

TEST_CASE("flip_sign negates the spectrum", "[operator]") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const auto J = random_section(rng, 50);
    const auto e = dense_oracle(J);
    const auto f = dense_oracle(flip_sign(J));
    for (std::size_t k = 0; k < e.size(); ++k) CHECK_THAT(f[k], WithinAbs(-e[e.size() - 1 - k], 1e-12));
  }
  // 2x2 closed form: eigenvalues of [[b, a], [a, 0]] are (b +- sqrt(b^2 + 4a^2)) / 2.
  const TruncatedJacobi two({1.5, 0.0}, {0.7});
  const auto ev = dense_oracle(flip_sign(two));
  const double r = std::sqrt(1.5 * 1.5 + 4.0 * 0.49);
  CHECK_THAT(ev[0], WithinAbs((-1.5 - r) / 2.0, 1e-14));
  CHECK_THAT(ev[1], WithinAbs((-1.5 + r) / 2.0, 1e-14));
}

TEST_CASE("comparison operators", "[operator]") {
  const std::vector<double> zero(11, 0.0);
  const auto z = comparison_operators(zero, 10);
  CHECK(z.plus == free_section(10));
  CHECK(z.minus == free_section(10));

  std::vector<double> f(8, 0.0);
  f[3] = 1.0;
  const auto p = comparison_operators(f, 7);
  for (std::size_t k = 0; k < 7; ++k) {
    const double expect = (k == 2 || k == 3) ? 2.0 : 0.0;
    CHECK(p.plus.diag()[k] == expect);
    CHECK(p.minus.diag()[k] == -expect);
  }

  // Alternating f_n ~ beta (-1)^n / (2n): k^2 * 2 (f_k^2 + f_{k+1}^2) -> beta^2.
  const double beta = 0.6;
  const auto dec = decompose(CoefficientSequence::alternating(0.0, beta, 1.0), 20001);
  const auto big = comparison_operators(dec.f, 20000);
  const double k = 10000.0;
  CHECK_THAT(k * k * big.plus.diag()[9999], WithinAbs(beta * beta, 1e-3));
  CHECK_THROWS_AS(comparison_operators(zero, 11), Error);
}

TEST_CASE("shift builds up and down shifts", "[operator]") {
  const std::vector<double> x{1.0, 2.0, 3.0};
  const auto s = shift(x, 9.0);
  CHECK(s.base == x);
  CHECK(s.tilde == std::vector<double>{2.0, 3.0});
  CHECK(s.sharp == std::vector<double>{9.0, 1.0, 2.0});
}

TEST_CASE("potential_W for simple decompositions", "[operator]") {
  const auto free = decompose(CoefficientSequence::free_family(), 64);
  for (double w : potential_W(free, 50)) CHECK(w == 0.0);

  const auto dec = decompose(CoefficientSequence::alternating(0.0, 0.8, 1.0), 256);
  const auto W = potential_W(dec, 200);
  for (std::size_t k = 0; k < 200; ++k) {
    const double expect = 12.0 * (dec.f[k] * dec.f[k] + dec.f[k + 1] * dec.f[k + 1]);
    REQUIRE_THAT(W[k], WithinAbs(expect, 1e-15));
  }
}

TEST_CASE("form_gap against closed forms and a dense oracle", "[operator]") {
  // W = 0, J = J0: the form is (2 - J0)/2 on the leading m x m block.
  for (std::size_t n : {30u, 60u}) {
    const std::size_t m = n - 10;
    const std::vector<double> W(n, 0.0);
    const double exact = 0.5 * (2.0 - 2.0 * std::cos(std::numbers::pi / static_cast<double>(m + 1)));
    CHECK_THAT(form_gap(free_section(n), W, 10), WithinAbs(exact, 1e-12));
  }

  const auto seq = CoefficientSequence::alternating(0.05, 0.3, 1.0);
  const std::size_t n = 120;
  const auto J = truncate(seq, n);
  const auto W = potential_W(decompose(seq, 256), n);
  const std::size_t m = n - 10;
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < m; ++i) {
    D(i, i) = 2.0 - J.diag()[i] - 0.5 * (2.0 - W[i]);
    if (i + 1 < m) D(i, i + 1) = D(i + 1, i) = -J.offdiag()[i] + 0.5;
  }
  const double oracle = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(D).eigenvalues().minCoeff();
  CHECK_THAT(form_gap(J, W, 10), WithinAbs(oracle, 1e-10));
}

TEST_CASE("form_gap is nonnegative on a parameter grid", "[operator]") {
  for (double alpha : {0.0, 0.05, -0.05}) {
    for (double beta : {0.1, 0.3, -0.3}) {
      for (double gamma : {1.0, 0.75}) {
        const auto seq = CoefficientSequence::alternating(alpha, beta, gamma);
        const std::size_t n = 500;
        const auto W = potential_W(decompose(seq, 512), n);
        INFO("alpha=" << alpha << " beta=" << beta << " gamma=" << gamma);
        CHECK(form_gap(truncate(seq, n), W, 10) >= -1e-10);
      }
    }
  }
}

TEST_CASE("summation-by-parts bound", "[operator]") {
  const std::vector<double> one{1.0};
  const std::vector<double> f1{0.0, 1.0};
  const auto single = sbp_bound_check(one, f1);
  CHECK(single.lhs == 1.0);
  CHECK_THAT(single.rhs, WithinAbs(std::sqrt(2.0) * std::sqrt(2.0), 1e-15));

  const std::vector<double> flat(4, 0.25);
  const std::vector<double> u{1.0, -2.0, 0.5};
  CHECK(sbp_bound_check(u, flat).lhs == 0.0);

  std::mt19937_64 rng(2024);
  std::normal_distribution<double> g;
  std::uniform_int_distribution<int> len(1, 60);
  for (int trial = 0; trial < 1000; ++trial) {
    const int m = len(rng);
    std::vector<double> v(m), f(m + 1);
    for (auto& x : v) x = g(rng);
    for (auto& x : f) x = g(rng);
    const auto r = sbp_bound_check(v, f);
    REQUIRE(r.rhs - r.lhs >= -1e-12 * (1.0 + r.rhs));
  }
  CHECK_THROWS_AS(sbp_bound_check(u, f1), Error);
}

TEST_CASE("free_form equals <u, (2 - H0) u>", "[operator]") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  for (int m : {1, 2, 7, 40}) {
    std::vector<double> u(m);
    for (auto& x : u) x = g(rng);
    Eigen::MatrixXd A = 2.0 * Eigen::MatrixXd::Identity(m, m);
    for (int i = 0; i + 1 < m; ++i) A(i, i + 1) = A(i + 1, i) = -1.0;
    const Eigen::Map<Eigen::VectorXd> v(u.data(), m);
    CHECK_THAT(free_form(u), WithinAbs(v.dot(A * v), 1e-12));
  }
}

TEST_CASE("section CSV export", "[operator][io]") {
  const auto path = std::filesystem::temp_directory_path() / "oscspec_section.csv";
  write_section_csv(TruncatedJacobi({0.5, -0.25, 0.0}, {1.0, 2.0}), path);
  std::ifstream in(path, std::ios::binary);
  std::stringstream text;
  text << in.rdbuf();
  CHECK(text.str() == "index,b,a\n1,0.5,1\n2,-0.25,2\n3,0,\n");
}
