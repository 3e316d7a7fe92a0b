#include "ccl/numeric/exact.hpp"

#include <cmath>

#include "ccl/core/error.hpp"

namespace ccl {

int ceil_log2(const Int& n) {
  if (sgn(n) <= 0) throw DomainError("ceil_log2 of a non-positive integer");
  if (n == 1) return 0;
  Int m = n - 1;
  return static_cast<int>(mpz_sizeinbase(m.get_mpz_t(), 2));
}

int ceil_log2(std::uint64_t n) { return ceil_log2(Int(static_cast<unsigned long>(n))); }

double log2_of(const Int& n) {
  if (sgn(n) <= 0) throw DomainError("log2 of a non-positive integer");
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, n.get_mpz_t());
  return std::log2(mant) + static_cast<double>(exp);
}

double log2_of(const Rational& q) {
  return log2_of(Int(q.get_num())) - log2_of(Int(q.get_den()));
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.pop_back();
  std::size_t first = s.find_first_not_of(" \t");
  if (first == std::string::npos) throw ParseError(0, "empty rational");
  s = s.substr(first);
  auto valid_int = [](const std::string& t) {
    std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i >= t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  auto strip_plus = [](std::string t) {
    if (!t.empty() && t[0] == '+') t.erase(0, 1);
    return t;
  };
  std::size_t slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-')
    throw ParseError(0, "malformed rational '" + s + "'");
  Int n(strip_plus(num)), d(strip_plus(den));
  if (d == 0) throw ParseError(0, "zero denominator in '" + s + "'");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::string to_string(const Int& v) { return v.get_str(); }

std::string to_string(const Rational& v) {
  Rational c = v;
  c.canonicalize();
  return c.get_str();
}

Int pow_int(const Int& base, unsigned long exp) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

Int factorial(unsigned long n) {
  Int r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

}  // namespace ccl
