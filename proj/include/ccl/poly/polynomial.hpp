#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ccl/numeric/exact.hpp"

namespace ccl {

using Exponent = std::vector<std::uint16_t>;

/// Multivariate polynomial over the integers in z_1..z_k. Only nonzero
/// coefficients are stored.
class IntPolynomial {
 public:
  explicit IntPolynomial(int variables = 1);
  static IntPolynomial constant(int variables, const Int& c);
  static IntPolynomial variable(int variables, int index);  // z_{index+1}
  // coeffs[e] is the coefficient of z^e.
  static IntPolynomial univariate(const std::vector<Int>& coeffs);

  int variables() const noexcept { return variables_; }
  const std::map<Exponent, Int>& terms() const noexcept { return terms_; }
  std::size_t term_count() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  void add_term(const Exponent& e, const Int& c);
  Int coefficient(const Exponent& e) const;

  // Total degree; -1 for the zero polynomial.
  int degree() const;
  int degree_in(int var) const;
  // Largest absolute coefficient (0 for the zero polynomial).
  Int lc() const;

  Int evaluate(std::span<const Int> point) const;
  Rational evaluate(std::span<const Rational> point) const;

  IntPolynomial operator+(const IntPolynomial& o) const;
  IntPolynomial operator-(const IntPolynomial& o) const;
  IntPolynomial operator*(const IntPolynomial& o) const;
  IntPolynomial operator-() const;
  IntPolynomial scaled(const Int& c) const;
  IntPolynomial pow(unsigned n) const;

  // p(-z_1, ..., -z_k)
  IntPolynomial reflect() const;
  // Univariate p(z) as p(z_{var+1}) in `variables` variables.
  IntPolynomial embed(int variables, int var) const;
  // Dense coefficient vector of a univariate polynomial.
  std::vector<Int> dense() const;

  bool operator==(const IntPolynomial&) const = default;

 private:
  void check_compatible(const IntPolynomial& o) const;
  int variables_;
  std::map<Exponent, Int> terms_;
};

/// p / q with q not identically zero.
class RationalFunction {
 public:
  RationalFunction(IntPolynomial numerator, IntPolynomial denominator);

  const IntPolynomial& numerator() const noexcept { return num_; }
  const IntPolynomial& denominator() const noexcept { return den_; }
  int variables() const noexcept { return num_.variables(); }
  // max(deg p, deg q)
  int degree() const;
  Int lc() const;

  // nullopt where the denominator vanishes.
  std::optional<Rational> evaluate(std::span<const Int> point) const;

 private:
  IntPolynomial num_, den_;
};

// Text format: sum of terms "[+|-]c*z1^a1*...*zk^ak"; rational functions as
// "poly / poly". `variables` of 0 means "highest index mentioned" (at least 1).
IntPolynomial parse_polynomial(std::string_view text, int variables = 0);
RationalFunction parse_rational_function(std::string_view text, int variables = 0);
std::string to_string(const IntPolynomial& p);
std::string to_string(const RationalFunction& r);

}  // namespace ccl
