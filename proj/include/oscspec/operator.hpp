#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

#include "oscspec/sequences.hpp"

namespace oscspec {

/// Finite Dirichlet section of a Jacobi matrix: diag holds b_1..b_n, offdiag
/// holds a_1..a_{n-1}.  Immutable after construction.
class TruncatedJacobi {
 public:
  TruncatedJacobi(std::vector<double> diag, std::vector<double> offdiag);

  std::size_t size() const noexcept { return diag_.size(); }
  std::span<const double> diag() const noexcept { return diag_; }
  std::span<const double> offdiag() const noexcept { return offdiag_; }
  double norm_bound() const noexcept { return norm_; }

  friend bool operator==(const TruncatedJacobi& x, const TruncatedJacobi& y) {
    return x.diag_ == y.diag_ && x.offdiag_ == y.offdiag_;
  }

 private:
  std::vector<double> diag_;
  std::vector<double> offdiag_;
  double norm_ = 0.0;
};

TruncatedJacobi truncate(const CoefficientSequence& seq, std::size_t n);
TruncatedJacobi free_section(std::size_t n);

/// b -> -b.  Conjugation by diag((-1)^k) maps the result to the negative of the input.
TruncatedJacobi flip_sign(const TruncatedJacobi& J);

struct ComparisonPair {
  TruncatedJacobi plus;
  TruncatedJacobi minus;
};

/// J_plus / J_minus of size n with unit off-diagonal and diagonal +-2(f_k^2 + f_{k+1}^2).
/// f[k] holds f_{k+1}; f.size() must be >= n + 1.
ComparisonPair comparison_operators(std::span<const double> f, std::size_t n);

/// x, its up-shift x~_k = x_{k+1} (one shorter) and down-shift x#_k = x_{k-1}
/// whose first entry is the supplied boundary value.
struct ShiftedSequences {
  std::vector<double> base;
  std::vector<double> tilde;
  std::vector<double> sharp;
};

ShiftedSequences shift(std::span<const double> x, double sharp_boundary);

/// W_k, k = 1..n (returned 0-based), from a decomposition with horizon >= n.
/// Boundary values: c#_1 = 0 and d#_1 = d_1 (a_0 = 1 with c_0 = 0 forces d_0 = d_1).
std::vector<double> potential_W(const Decomposition& dec, std::size_t n);

/// Minimum eigenvalue of (2 - J) - (2 - J0 - W)/2 on vectors vanishing on the last
/// `margin` sites.
double form_gap(const TruncatedJacobi& J, std::span<const double> W, std::size_t margin = 10);

struct SbpBound {
  double lhs = 0.0;
  double rhs = 0.0;
};

/// |<u, b u>| against <u,(2-H0)u>^{1/2} [2 <u,(f^2 + f~^2) u>]^{1/2} with b_k = f_{k+1} - f_k.
/// u lives on consecutive whole-line sites 0..m-1 and is zero elsewhere; f has m + 1 entries.
SbpBound sbp_bound_check(std::span<const double> u, std::span<const double> f);

/// <u, (2 - H0) u> = sum over the whole line of (u(k+1) - u(k))^2, u zero outside its span.
double free_form(std::span<const double> u);

/// CSV export: header "index,b,a"; the a field of the last row is empty.
void write_section_csv(const TruncatedJacobi& J, const std::filesystem::path& path);

}  // namespace oscspec
