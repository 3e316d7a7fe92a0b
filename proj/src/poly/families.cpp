#include "ccl/poly/families.hpp"

#include <algorithm>
#include <cmath>

#include "ccl/core/error.hpp"
#include "ccl/numeric/random.hpp"

namespace ccl::brs {
namespace {

void check_guard(int k, int m) {
  if (k < 1 || m < 0) throw DomainError("need k >= 1 and m >= 0");
  if (k > kMaxArity || m > kMaxScale)
    throw GuardError("family guard is k <= " + std::to_string(kMaxArity) + ", m <= " + std::to_string(kMaxScale));
}

std::string show(const Rational& r) { return to_string(r); }

// Visits every multi-index in [0, e]^k in odometer order.
template <class Fn>
void for_each_index(int k, int e, Fn&& fn) {
  std::vector<int> idx(k, 0);
  for (;;) {
    fn(idx);
    int v = k - 1;
    while (v >= 0 && idx[v] == e) idx[v--] = 0;
    if (v < 0) return;
    ++idx[v];
  }
}

// Coefficients of the expanded numerator/denominator of T at one multi-index.
struct ExpandedCoeffs {
  Int num, den;
};

ExpandedCoeffs coeffs_at(const std::vector<int>& idx, const std::vector<Int>& n, const std::vector<Int>& d,
                         std::vector<Int>& prefix, std::vector<Int>& suffix) {
  const int k = static_cast<int>(idx.size());
  prefix[0] = 1;
  for (int i = 0; i < k; ++i) prefix[i + 1] = prefix[i] * d[idx[i]];
  suffix[k] = 1;
  for (int i = k - 1; i >= 0; --i) suffix[i] = suffix[i + 1] * d[idx[i]];
  ExpandedCoeffs c{prefix[k], prefix[k]};
  for (int i = 0; i < k; ++i) {
    if (sgn(n[idx[i]]) == 0) continue;
    c.num += 2 * n[idx[i]] * prefix[i] * suffix[i + 1];
  }
  return c;
}

std::vector<Int> padded_dense(const IntPolynomial& p, int e) {
  auto v = p.dense();
  v.resize(e + 1, Int(0));
  return v;
}

}  // namespace

int h(int k) {
  if (k < 1) throw DomainError("h(k) needs k >= 1");
  // least odd x with 2^x >= 2k + 1
  int x = 1;
  while ((Int(1) << x) < Int(2 * k + 1)) x += 2;
  return x;
}

IntPolynomial build_P(int m) {
  if (m < 0) throw DomainError("P_m needs m >= 0");
  IntPolynomial p = IntPolynomial::univariate({Int(-1), Int(1)});
  for (int i = 1; i <= m; ++i) {
    IntPolynomial f = IntPolynomial::univariate({-(Int(1) << i), Int(1)});
    p = p * f * f;
  }
  return p;
}

RationalFunction build_S(int k, int m) {
  check_guard(k, m);
  int hk = h(k);
  IntPolynomial p = build_P(m);
  IntPolynomial a = p.reflect().pow(hk);
  IntPolynomial b = p.pow(hk);
  return RationalFunction(a - b, a + b);
}

int SeparableT::degree_per_variable() const { return std::max(num.degree(), den.degree()); }

Int SeparableT::coefficient_bound() const {
  Int l = std::max(num.lc(), den.lc());
  return Int(2 * k + 1) * pow_int(l, k);
}

Int SeparableT::expanded_size() const { return pow_int(Int(degree_per_variable() + 1), k); }

std::optional<Rational> SeparableT::evaluate(std::span<const Int> z) const {
  if (static_cast<int>(z.size()) != k) throw DomainError("T evaluation point has wrong arity");
  Rational total = 1;
  for (const Int& zi : z) {
    Int v[1] = {zi};
    Int d = den.evaluate(v);
    if (sgn(d) == 0) return std::nullopt;
    total += ratio(2 * num.evaluate(v), d);
  }
  return total;
}

SeparableT build_T_separable(int k, int m, bool guarded) {
  if (guarded) check_guard(k, m);
  if (k < 1 || m < 0) throw DomainError("need k >= 1 and m >= 0");
  int kk = 2 * k;
  int h2 = h(kk);
  IntPolynomial p = build_P(m);
  IntPolynomial a = p.reflect().pow(h2);
  IntPolynomial b = p.pow(h2);
  SeparableT t;
  t.k = k;
  t.m = m;
  t.h2k = h2;
  t.num = a - b;
  t.den = a + b;
  return t;
}

RationalFunction build_T(int k, int m, std::size_t max_terms) {
  SeparableT t = build_T_separable(k, m);
  if (t.expanded_size() > Int(static_cast<unsigned long>(max_terms)))
    throw GuardError("expanded T^(" + std::to_string(k) + ")_" + std::to_string(m) + " would have " +
                     t.expanded_size().get_str() + " monomials (limit " + std::to_string(max_terms) + ")");
  int e = t.degree_per_variable();
  auto n = padded_dense(t.num, e), d = padded_dense(t.den, e);
  IntPolynomial num(k), den(k);
  std::vector<Int> prefix(k + 1), suffix(k + 1);
  Exponent ex(k);
  for_each_index(k, e, [&](const std::vector<int>& idx) {
    ExpandedCoeffs c = coeffs_at(idx, n, d, prefix, suffix);
    for (int i = 0; i < k; ++i) ex[i] = static_cast<std::uint16_t>(idx[i]);
    num.add_term(ex, c.num);
    den.add_term(ex, c.den);
  });
  return RationalFunction(std::move(num), std::move(den));
}

Int expanded_T_lc(const SeparableT& t, std::size_t max_terms) {
  if (t.expanded_size() > Int(static_cast<unsigned long>(max_terms)))
    throw GuardError("expanded T coefficient stream above " + std::to_string(max_terms) + " monomials");
  int e = t.degree_per_variable();
  auto n = padded_dense(t.num, e), d = padded_dense(t.den, e);
  std::vector<Int> prefix(t.k + 1), suffix(t.k + 1);
  Int best = 0;
  for_each_index(t.k, e, [&](const std::vector<int>& idx) {
    ExpandedCoeffs c = coeffs_at(idx, n, d, prefix, suffix);
    Int a = abs(c.num), b = abs(c.den);
    if (a > best) best = a;
    if (b > best) best = b;
  });
  return best;
}

Int degm_power_bound(int hh, int m) {
  return pow_int(Int(hh), 2UL * hh) * pow_int(Int(2 * m + 1), 3UL * hh * m);
}

Int degm_T_bound(int hh, int m) {
  return pow_int(Int(hh), 3UL * hh) * pow_int(Int(2 * m + 1), 3UL * hh * m) * (Int(1) << (3 * hh));
}

bool DegMReport::passed() const { return violations() == 0; }

int DegMReport::violations() const {
  int v = 0;
  for (const auto& it : items)
    if (!it.informational && !it.passed) ++v;
  return v;
}

namespace {

DegMItem item(std::string name, bool ok, std::string detail, std::string witness = {}) {
  return {std::move(name), ok, false, std::move(detail), std::move(witness)};
}

std::string bits(const Int& v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "2^%.3f", sgn(v) > 0 ? log2_of(v) : -INFINITY);
  return buf;
}

void check_S(DegMReport& r, const RationalFunction& s, int k, int m) {
  const Int top = Int(1) << m;
  const Rational upper = Rational(1) + Rational(1, k);
  std::string bad_pos, bad_neg;
  for (Int z = 1; z <= top && bad_pos.empty(); ++z) {
    Int pt[1] = {z};
    auto v = s.evaluate(pt);
    if (!v || *v < 1 || *v >= upper) bad_pos = "z=" + z.get_str() + " S=" + (v ? show(*v) : "undefined");
  }
  for (Int z = -1; z >= -top && bad_neg.empty(); --z) {
    Int pt[1] = {z};
    auto v = s.evaluate(pt);
    if (!v || *v > -1 || *v <= -upper) bad_neg = "z=" + z.get_str() + " S=" + (v ? show(*v) : "undefined");
  }
  r.items.push_back(item("S in [1, 1+1/k) on [1, 2^m]", bad_pos.empty(),
                         "checked " + top.get_str() + " integers exactly", bad_pos));
  r.items.push_back(item("S in (-1-1/k, -1] on [-2^m, -1]", bad_neg.empty(),
                         "checked " + top.get_str() + " integers exactly", bad_neg));

  int dbound = r.hk * (2 * m + 1);
  r.items.push_back(item("deg S <= h(k)(2m+1)", s.degree() <= dbound,
                         "deg " + std::to_string(s.degree()) + " vs " + std::to_string(dbound)));
  Int lcs = s.lc();
  Int bound = 2 * degm_power_bound(r.hk, m);
  r.items.push_back(item("lc S <= 2^(1 + 2h log h + 3hm log(2m+1))", lcs <= bound,
                         "lc " + bits(lcs) + " vs bound " + bits(bound)));

  bool odd = s.numerator().reflect() == -s.numerator() && s.denominator().reflect() == s.denominator();
  r.items.push_back(item("S(-z) = -S(z) as rational functions", odd, "numerator odd, denominator even"));
}

void check_T_sign(DegMReport& r, const SeparableT& t, const DegMOptions& opts) {
  const int k = t.k;
  const long side = 2L << t.m;  // values +-1..+-2^m
  double total = std::pow(static_cast<double>(side), k);
  // S^(2k) at every admissible z; index (v - 1) for v > 0, side/2 + (-v - 1) for v < 0.
  std::vector<Rational> s_val(side);
  std::vector<double> s_approx(side);
  const long half = side / 2;
  for (long v = 1; v <= half; ++v) {
    for (int sign : {1, -1}) {
      Int z[1] = {Int(sign * v)};
      Rational q = ratio(t.num.evaluate(z), t.den.evaluate(z));
      long slot = sign > 0 ? v - 1 : half + v - 1;
      s_val[slot] = q;
      s_approx[slot] = q.get_d();
    }
  }
  auto value_of = [&](long slot) { return slot < half ? slot + 1 : -(slot - half + 1); };
  const bool exact = total <= 100'000;
  std::string witness;
  long checked = 0;
  auto check_point = [&](const std::vector<long>& slots) {
    int pos = 0;
    for (long s : slots) pos += s < half ? 1 : 0;
    bool want_positive = 2 * pos >= k;
    int sign;
    double approx = 1;
    for (long s : slots) approx += 2 * s_approx[s];
    // Relative error of each term is below 2^-52, so |error| < 1e-12 here.
    if (!exact && std::fabs(approx) > 1e-9) {
      sign = approx > 0 ? 1 : -1;
    } else {
      Rational sum = 1;
      for (long s : slots) sum += 2 * s_val[s];
      sign = sgn(sum);
    }
    ++checked;
    if ((sign > 0) != want_positive || sign == 0) {
      if (witness.empty()) {
        witness = "z=(";
        for (std::size_t i = 0; i < slots.size(); ++i)
          witness += (i ? "," : "") + std::to_string(value_of(slots[i]));
        witness += ")";
      }
    }
  };
  std::vector<long> slots(k, 0);
  if (total <= static_cast<double>(opts.max_grid_points)) {
    for (;;) {
      check_point(slots);
      int v = k - 1;
      while (v >= 0 && slots[v] == side - 1) slots[v--] = 0;
      if (v < 0) break;
      ++slots[v];
    }
  } else {
    r.grid_sampled = true;
    Rng rng(opts.seed, static_cast<std::uint64_t>(k * 100 + t.m));
    for (long s = 0; s < opts.samples; ++s) {
      for (auto& x : slots) x = rng.uniform_int(0, side - 1);
      check_point(slots);
    }
  }
  r.grid_points = checked;
  r.items.push_back(item("sign T^(k)_m = majority sign for 1 <= |z_i| <= 2^m", witness.empty(),
                         std::to_string(checked) + (r.grid_sampled ? " sampled" : " grid") + " points" +
                             (exact ? ", exact" : ", exact fallback near zero"),
                         witness));
}

void check_T_coefficients(DegMReport& r, const SeparableT& t, const DegMOptions& opts) {
  const int m = t.m;
  int dbound = t.h2k * (2 * m + 1);
  r.items.push_back(item("per-variable deg T <= h(2k)(2m+1)", t.degree_per_variable() <= dbound,
                         "deg " + std::to_string(t.degree_per_variable()) + " vs " + std::to_string(dbound)));

  // The chain lc T <= 2 lc S^(2k) <= bound, with T read summand-wise as the
  // univariate fraction 2 N(z) / D(z).
  Int lc_s2 = std::max(t.num.lc(), t.den.lc());
  Int lc_summand = std::max(Int(2 * t.num.lc()), t.den.lc());
  Int bound2k = degm_T_bound(t.h2k, m);
  r.items.push_back(item("lc(2 S^(2k)) <= 2 lc S^(2k) <= 2^(3h(2k)(log h(2k) + m log(2m+1) + 1))",
                         lc_summand <= 2 * lc_s2 && 2 * lc_s2 <= bound2k,
                         "lc " + bits(lc_summand) + ", 2 lc S " + bits(2 * lc_s2) + " vs bound " + bits(bound2k)));

  Int boundk = degm_T_bound(r.hk, m);
  DegMItem hk_form{"same chain with h(k) in place of h(2k)", 2 * lc_s2 <= boundk, true,
                   "2 lc S " + bits(2 * lc_s2) + " vs " + bits(boundk), {}};
  r.items.push_back(hk_form);

  // Coefficients of the common-denominator expansion. prod_i D(z_i) alone
  // has lc(D)^k, which already bounds the expanded lc from below.
  Int lower = pow_int(t.den.lc(), t.k);
  std::string detail = "expanded lc >= lc(D)^k = " + bits(lower);
  bool exceeds = lower > bound2k;
  if (opts.expanded_T_lc && t.expanded_size() <= Int(2'000'000)) {
    Int exact = expanded_T_lc(t);
    detail = "expanded lc = " + bits(exact);
    exceeds = exact > bound2k;
  }
  r.items.push_back({"expanded k-variate T coefficients vs the h(2k) bound", !exceeds, true,
                     detail + " vs bound " + bits(bound2k), exceeds ? "bound exceeded by the expansion" : ""});
}

}  // namespace

DegMReport check_degm_bounds(int k, int m, const DegMOptions& opts) {
  check_guard(k, m);
  DegMReport r;
  r.k = k;
  r.m = m;
  r.hk = h(k);
  r.h2k = h(2 * k);

  IntPolynomial p = build_P(m);
  IntPolynomial ph = p.pow(r.hk);
  int want = r.hk * (2 * m + 1);
  r.items.push_back(item("deg P_m^h(k) = h(k)(2m+1)", ph.degree() == want,
                         "deg " + std::to_string(ph.degree()) + " vs " + std::to_string(want)));
  Int bound = degm_power_bound(r.hk, m);
  r.items.push_back(item("lc P_m^h(k) <= 2^(2h log h + 3hm log(2m+1))", ph.lc() <= bound,
                         "lc " + bits(ph.lc()) + " vs bound " + bits(bound)));

  check_S(r, build_S(k, m), k, m);
  SeparableT t = build_T_separable(k, m);
  check_T_sign(r, t, opts);
  check_T_coefficients(r, t, opts);
  return r;
}

}  // namespace ccl::brs
