#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "oscspec/error.hpp"
#include "oscspec/sequences.hpp"

using namespace oscspec;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& err) {
    return err.code();
  }
  FAIL("no oscspec::Error thrown");
  return ErrorCode::config_parse;
}

}  // namespace

TEST_CASE("evaluate: alternating, free and cosine(pi) sites", "[sequences]") {
  const auto alt = CoefficientSequence::alternating(0.0, 1.0, 1.0);
  const auto p3 = evaluate(alt, 3);
  CHECK(p3.a == 1.0);
  CHECK_THAT(p3.b, WithinAbs(-1.0 / 3.0, 1e-16));

  const auto free7 = evaluate(CoefficientSequence::free_family(), 7);
  CHECK(free7 == CoefficientPair{1.0, 0.0});

  const auto cos4 = evaluate(CoefficientSequence::cosine(0.0, 1.0, 1.0, std::numbers::pi), 4);
  CHECK(cos4 == evaluate(alt, 4));
  CHECK(cos4.b == 0.25);

  const auto alt2 = CoefficientSequence::alternating(0.3, -0.7, 0.45);
  const auto cos2 = CoefficientSequence::cosine(0.3, -0.7, 0.45, std::numbers::pi);
  const SequenceEvaluator ea(alt2), ec(cos2);
  for (std::int64_t n = 1; n <= 20000; ++n) REQUIRE(ea(n) == ec(n));
}

TEST_CASE("evaluate: table overrides and inverse-square", "[sequences]") {
  auto seq = CoefficientSequence::alternating(0.0, 1.0, 1.0);
  seq.table = {{2.0, 5.0}, {0.5, -1.0}};
  CHECK(evaluate(seq, 1) == CoefficientPair{2.0, 5.0});
  CHECK(evaluate(seq, 2) == CoefficientPair{0.5, -1.0});
  CHECK(evaluate(seq, 3).b == -1.0 / 3.0);

  const auto inv = CoefficientSequence::inverse_square(3.0 / 8.0, 0.5);
  CHECK_THAT(evaluate(inv, 4).a, WithinAbs(1.0 + 3.0 / 128.0, 1e-16));
  CHECK_THAT(evaluate(inv, 4).b, WithinAbs(1.0 / 32.0, 1e-16));
}

TEST_CASE("evaluate rejects parameters with some a_n <= 0", "[sequences][errors]") {
  CHECK(code_of([] { SequenceEvaluator(CoefficientSequence::alternating(1.5, 0.0, 1.0)); }) ==
        ErrorCode::invalid_parameters);
  CHECK(code_of([] { SequenceEvaluator(CoefficientSequence::alternating(1.0, 0.0, 0.5)); }) ==
        ErrorCode::invalid_parameters);
  CHECK(code_of([] { SequenceEvaluator(CoefficientSequence::alternating(0.1, 0.0, -1.0)); }) ==
        ErrorCode::invalid_parameters);
  CHECK(code_of([] { SequenceEvaluator(CoefficientSequence::cosine(0.1, 0.0, 1.0, 7.0)); }) ==
        ErrorCode::invalid_parameters);
  CHECK(code_of([] { SequenceEvaluator(CoefficientSequence::from_table({{1.0, 0.0}, {-0.1, 0.0}})); }) ==
        ErrorCode::invalid_parameters);
  CHECK(code_of([] { evaluate(CoefficientSequence::free_family(), 0); }) == ErrorCode::invalid_parameters);
  // a_2 = 1 - 3/2 < 0.
  CHECK(code_of([] { SequenceEvaluator(CoefficientSequence::alternating(-3.0, 0.0, 1.0))(1); }) ==
        ErrorCode::invalid_parameters);
}

TEST_CASE("tail_sum: alternating harmonic tail, zero tail, decay", "[sequences]") {
  const auto alt = CoefficientSequence::alternating(0.0, 1.0, 1.0);
  CHECK_THAT(tail_sum(alt, Component::b_part, 1), WithinAbs(std::log(2.0), 1e-14));
  CHECK(tail_sum(CoefficientSequence::free_family(), Component::b_part, 5) == 0.0);
  for (std::int64_t n : {100, 1000, 100000}) {
    const double t = std::abs(tail_sum(alt, Component::b_part, n));
    const double x = static_cast<double>(n);
    CHECK(t <= 1.0 / (2.0 * x) + 1.0 / (x * x));
    CHECK(t >= 1.0 / (2.0 * x) - 1.0 / (x * x));
  }
  const auto inv = CoefficientSequence::inverse_square(0.0, 1.0);
  CHECK_THAT(tail_sum(inv, Component::b_part, 1), WithinAbs(-std::numbers::pi * std::numbers::pi / 6.0, 1e-14));
}

TEST_CASE("tail_sum telescopes at the site value", "[sequences]") {
  for (const auto& seq : {CoefficientSequence::alternating(0.2, 1.0, 1.0), CoefficientSequence::alternating(0.0, 1.0, 0.4),
                          CoefficientSequence::cosine(0.1, 0.8, 0.6, 1.0)}) {
    const SequenceEvaluator ev(seq);
    double prev = tail_sum(seq, Component::b_part, 1);
    double prev_a = tail_sum(seq, Component::a_part, 1);
    for (std::int64_t n = 1; n <= 300; ++n) {
      const double next = tail_sum(seq, Component::b_part, n + 1);
      const double next_a = tail_sum(seq, Component::a_part, n + 1);
      REQUIRE(std::abs((next - prev) - ev(n).b) <= 1e-14);
      REQUIRE(std::abs((next_a - prev_a) - (ev(n).a - 1.0)) <= 1e-14);
      prev = next;
      prev_a = next_a;
    }
  }
}

TEST_CASE("decompose reconstructs the coefficients", "[sequences]") {
  auto with_table = CoefficientSequence::alternating(0.1, 0.5, 0.8);
  with_table.table = {{1.5, 0.2}, {0.9, -0.3}, {1.0, 0.0}};
  for (const auto& seq : {CoefficientSequence::alternating(0.0, 1.0, 1.0), CoefficientSequence::alternating(0.3, -0.4, 0.6),
                          CoefficientSequence::cosine(0.2, 0.7, 0.6, 1.0), with_table,
                          CoefficientSequence::inverse_square(0.3, 0.2)}) {
    const std::int64_t H = 4096;
    const auto dec = decompose(seq, H);
    const SequenceEvaluator ev(seq);
    REQUIRE(dec.c.size() == static_cast<std::size_t>(H));
    REQUIRE(dec.d.size() == static_cast<std::size_t>(H + 1));
    for (std::size_t k = 0; k < static_cast<std::size_t>(H); ++k) {
      const auto [a, b] = ev(static_cast<std::int64_t>(k + 1));
      REQUIRE(std::abs(1.0 + dec.c[k] + dec.d[k + 1] - dec.d[k] - a) <= 1e-12);
      REQUIRE(std::abs(dec.e[k] + dec.f[k + 1] - dec.f[k] - b) <= 1e-12);
    }
  }
}

TEST_CASE("decompose: pure families, tables and free", "[sequences]") {
  const auto alt = CoefficientSequence::alternating(0.0, 1.0, 1.0);
  const auto dec = decompose(alt, 2048);
  for (std::size_t k = 0; k < dec.c.size(); ++k) {
    REQUIRE(dec.c[k] == 0.0);
    REQUIRE(dec.e[k] == 0.0);
  }
  for (double d : dec.d) REQUIRE(d == 0.0);
  CHECK_THAT(dec.f[0], WithinAbs(std::log(2.0), 1e-13));
  CHECK_THAT(dec.f[999], WithinAbs(tail_sum(alt, Component::b_part, 1000), 1e-15));
  CHECK(dec.sums.f_squared.verdict == SeriesVerdict::bounded);
  CHECK(dec.sums.all_bounded());

  const auto slow = decompose(CoefficientSequence::alternating(0.0, 1.0, 0.4), 1 << 16);
  CHECK(slow.sums.f_squared.verdict == SeriesVerdict::divergent);

  const auto zero = decompose(CoefficientSequence::free_family(), 64);
  for (double x : zero.f) CHECK(x == 0.0);
  CHECK(zero.sums.all_bounded());

  auto seq = CoefficientSequence::alternating(0.0, 1.0, 1.0);
  seq.table = {{1.25, 2.0}};
  const auto t = decompose(seq, 64);
  CHECK(t.c[0] == 0.25);
  CHECK_THAT(t.e[0], WithinAbs(3.0, 1e-16));
  for (std::size_t k = 1; k < t.c.size(); ++k) CHECK((t.c[k] == 0.0 && t.e[k] == 0.0));
}

TEST_CASE("classify_doubling", "[sequences]") {
  CHECK(classify_doubling({1.0, 1.01, 1.02, 1.021}) == SeriesVerdict::bounded);
  CHECK(classify_doubling({1.0, 1.2, 1.44, 1.7}) == SeriesVerdict::divergent);
  CHECK(classify_doubling({1.0, 1.2, 1.3, 1.1}) == SeriesVerdict::inconclusive);
  CHECK(classify_doubling({0.0, 0.0, 0.0, 0.0}) == SeriesVerdict::bounded);
  CHECK(classify_doubling({1.0, 2.0}) == SeriesVerdict::inconclusive);
}

TEST_CASE("check_hypotheses predictions", "[sequences]") {
  const auto slow = check_hypotheses(CoefficientSequence::alternating(0.0, 1.0, 0.4), 1 << 16);
  CHECK(slow.limsup_bounded_below == ConditionVerdict::holds);
  CHECK(slow.square_sum.verdict == SeriesVerdict::divergent);
  CHECK(slow.prediction == SzegoPrediction::infinite);

  const auto fast = check_hypotheses(CoefficientSequence::alternating(0.3, 1.0, 0.6), 1 << 16);
  CHECK(fast.summable_decomposition);
  CHECK(fast.prediction == SzegoPrediction::finite);

  const auto free = check_hypotheses(CoefficientSequence::free_family(), 1024);
  CHECK(free.log_sum_min == 0.0);
  CHECK(free.log_sum_max == 0.0);
  CHECK(free.square_sum.verdict == SeriesVerdict::bounded);

  // a_n = 1 + 1/sqrt(n) drives -sum log a_j to -infinity.
  auto sinking = CoefficientSequence::from_table({});
  for (int n = 1; n <= 4096; ++n) sinking.table.push_back({1.0 + 1.0 / std::sqrt(n), 0.0});
  CHECK(check_hypotheses(sinking, 4096).limsup_bounded_below == ConditionVerdict::fails);
}

TEST_CASE("coefficient tables are read from CSV", "[sequences][io]") {
  const auto dir = std::filesystem::temp_directory_path() / "oscspec_seq_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream(dir / "ok.csv") << "a,b\n2,5\r\n0.5,-1e-3\n";
    std::ofstream(dir / "header.csv") << "b,a\n1,0\n";
    std::ofstream(dir / "bad.csv") << "a,b\n1,x\n";
  }
  const auto rows = read_coefficient_table(dir / "ok.csv");
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == CoefficientPair{2.0, 5.0});
  CHECK(rows[1] == CoefficientPair{0.5, -1e-3});
  CHECK(code_of([&] { read_coefficient_table(dir / "header.csv"); }) == ErrorCode::config_parse);
  CHECK(code_of([&] { read_coefficient_table(dir / "bad.csv"); }) == ErrorCode::config_parse);
  CHECK(code_of([&] { read_coefficient_table(dir / "missing.csv"); }) == ErrorCode::config_parse);
}
