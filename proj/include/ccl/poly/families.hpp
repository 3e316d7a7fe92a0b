#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ccl/poly/polynomial.hpp"

// The sign-approximating families used for majority over gap values:
//
//   P_m(z)      = (z - 1) * prod_{i=1..m} (z - 2^i)^2
//   S^(k)_m(z)  = (P_m(-z)^h - P_m(z)^h) / (P_m(-z)^h + P_m(z)^h),  h = h(k)
//   T^(k)_m(z)  = 2 S^(2k)_m(z_1) + ... + 2 S^(2k)_m(z_k) + 1
//
// h(k) is the least odd integer >= log2(2k + 1).
namespace ccl::brs {

inline constexpr int kMaxArity = 5;
inline constexpr int kMaxScale = 6;

int h(int k);

IntPolynomial build_P(int m);
RationalFunction build_S(int k, int m);

/// T^(k)_m kept as k copies of one univariate fraction N/D (those of
/// S^(2k)_m). Cheap at any (k, m) within the guard.
struct SeparableT {
  int k = 0;
  int m = 0;
  int h2k = 0;
  IntPolynomial num{1};  // N(z) = P(-z)^h - P(z)^h
  IntPolynomial den{1};  // D(z) = P(-z)^h + P(z)^h

  // Per-variable degree of the common-denominator form.
  int degree_per_variable() const;
  // Total degree of the common-denominator numerator/denominator.
  int total_degree() const { return k * degree_per_variable(); }
  // Upper bound (2k+1) * max(lc N, lc D)^k on every expanded coefficient.
  Int coefficient_bound() const;
  // Number of monomials of the expanded form.
  Int expanded_size() const;

  std::optional<Rational> evaluate(std::span<const Int> z) const;
};

// `guarded` applies the k <= 5, m <= 6 limit; compilers pass false.
SeparableT build_T_separable(int k, int m, bool guarded = true);

// Expanded over prod_i D(z_i) into one k-variate fraction. Throws GuardError
// when the expansion would exceed `max_terms` monomials.
RationalFunction build_T(int k, int m, std::size_t max_terms = 1u << 20);

// Largest |coefficient| of the expanded numerator and denominator of T,
// streamed without storing the expansion. Throws GuardError above `max_terms`.
Int expanded_T_lc(const SeparableT& t, std::size_t max_terms = 20'000'000);

/// One verified statement of the coefficient/degree/sign report.
struct DegMItem {
  std::string name;
  bool passed = true;
  bool informational = false;  // reported, never counted as a violation
  std::string detail;
  std::string witness;
};

struct DegMReport {
  int k = 0;
  int m = 0;
  int hk = 0;
  int h2k = 0;
  std::vector<DegMItem> items;
  long grid_points = 0;
  bool grid_sampled = false;

  bool passed() const;
  int violations() const;
};

struct DegMOptions {
  long max_grid_points = 1'000'000;
  long samples = 20'000;
  std::uint64_t seed = 1;
  // Also stream the expanded T coefficients (informational).
  bool expanded_T_lc = true;
};

DegMReport check_degm_bounds(int k, int m, const DegMOptions& opts = {});

// Exact integer forms of the bound exponents.
// 2^(2h log h + 3hm log(2m+1)) = h^(2h) (2m+1)^(3hm)
Int degm_power_bound(int h, int m);
// 2^(3h(log h + m log(2m+1) + 1)) = h^(3h) (2m+1)^(3hm) 2^(3h)
Int degm_T_bound(int h, int m);

}  // namespace ccl::brs
