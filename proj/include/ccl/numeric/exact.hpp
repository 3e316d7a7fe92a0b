#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace ccl {

using Int = mpz_class;
using Rational = mpq_class;

// ceil(log2 n) for n >= 1.
int ceil_log2(const Int& n);
int ceil_log2(std::uint64_t n);

// log2 of a positive integer, accurate to double precision for any size.
double log2_of(const Int& n);
double log2_of(const Rational& q);

// Parses "p/q", "-p/q" or an integer. Throws ParseError on garbage or q == 0.
Rational parse_rational(std::string_view text);

std::string to_string(const Int& v);
std::string to_string(const Rational& v);

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// num / den in canonical form; mpq arithmetic requires canonical operands.
inline Rational ratio(const Int& num, const Int& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Int pow_int(const Int& base, unsigned long exp);
Int factorial(unsigned long n);

}  // namespace ccl
