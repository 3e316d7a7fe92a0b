#include "ccl/poly/compile.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <optional>

#include "ccl/core/error.hpp"
#include "ccl/poly/families.hpp"

namespace ccl {
namespace {

Int max_guesses_of(const std::vector<GuessProtocol>& ps) {
  Int l = 1;
  for (const auto& g : ps)
    if (g.guess_count() > l) l = g.guess_count();
  return l;
}

int max_pp_cost(const std::vector<GuessProtocol>& ps) {
  int c = 0;
  for (const auto& g : ps) c = std::max(c, pp_cost(g));
  return c;
}

void check_inputs(const std::vector<GuessProtocol>& ps, int variables) {
  if (ps.empty()) throw DomainError("no protocols to compile over");
  if (static_cast<int>(ps.size()) != variables)
    throw DomainError("polynomial has " + std::to_string(variables) + " variables but " +
                      std::to_string(ps.size()) + " protocols were given");
  for (const auto& g : ps)
    if (!(g.domain() == ps.front().domain())) throw DomainError("protocols on different domains");
}

// Output guess count sum_a |c_a| prod_i l_i^(a_i), before building anything.
Int compiled_count(const std::vector<GuessProtocol>& ps, const IntPolynomial& p) {
  Int total = 0;
  for (const auto& [e, c] : p.terms()) {
    Int t = abs(c);
    for (std::size_t i = 0; i < e.size(); ++i) t *= pow_int(ps[i].guess_count(), e[i]);
    total += t;
  }
  return total;
}

// p(gap_1, ..., gap_k) with shared power chains per variable.
GuessProtocol build_polynomial(const std::vector<GuessProtocol>& ps, const IntPolynomial& p) {
  const Domain dom = ps.front().domain();
  if (p.is_zero()) return sum(GuessProtocol::constant(dom, true), GuessProtocol::constant(dom, false));
  const int k = p.variables();
  std::vector<std::vector<GuessProtocol>> powers(k);
  auto power = [&](int i, int a) -> const GuessProtocol& {
    auto& chain = powers[i];
    if (chain.empty()) chain.push_back(ps[i]);
    while (static_cast<int>(chain.size()) < a) chain.push_back(product(chain.back(), ps[i]));
    return chain[a - 1];
  };
  std::vector<GuessProtocol> parts;
  parts.reserve(p.term_count());
  for (const auto& [e, c] : p.terms()) {
    std::optional<GuessProtocol> mono;
    for (int i = 0; i < k; ++i) {
      if (e[i] == 0) continue;
      mono = mono ? product(*mono, power(i, e[i])) : power(i, e[i]);
    }
    GuessProtocol term = mono ? *mono : GuessProtocol::constant(dom, true);
    if (sgn(c) < 0) term = complement(term);
    parts.push_back(replicate(term, abs(c)));
  }
  return sum(parts);
}

std::shared_ptr<const brs::SeparableT> separable_T(int k, int m) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const brs::SeparableT>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[{k, m}];
  if (!slot) slot = std::make_shared<const brs::SeparableT>(brs::build_T_separable(k, m, false));
  return slot;
}

LemmaBounds make_bounds(const Int& M, const Int& l, int d, int k, int c, int spread, int factor) {
  if (d < 0 || k < 1 || c < 0 || sgn(l) <= 0 || sgn(M) <= 0) throw DomainError("invalid bound parameters");
  LemmaBounds b{M, l, d, k, c, 0, 0, true};
  Int base = M * pow_int(l, d) * pow_int(Int(spread * d + k), k + 1);
  b.guesses = factor == 1 ? base : base * base;
  b.cost = factor * (ceil_log2(base) + c * d);
  return b;
}

}  // namespace

LemmaBounds lemma1_bounds(const Int& M, const Int& l, int d, int k, int c) { return make_bounds(M, l, d, k, c, 1, 1); }

LemmaBounds lemma2_bounds(const Int& M, const Int& l, int d, int k, int c) { return make_bounds(M, l, d, k, c, 2, 2); }

bool CompileResult::guesses_within() const { return !bounds.applicable || protocol.guess_count() <= bounds.guesses; }
bool CompileResult::cost_within() const { return !bounds.applicable || pp_cost(protocol) <= bounds.cost; }

CompileResult lemma1_compile(const std::vector<GuessProtocol>& protocols, const IntPolynomial& p,
                             const Int& max_guesses) {
  check_inputs(protocols, p.variables());
  Int count = p.is_zero() ? Int(2) : compiled_count(protocols, p);
  if (count > max_guesses)
    throw GuardError("compiled protocol would have " + count.get_str() + " guesses (limit " + max_guesses.get_str() +
                     ")");
  GuessProtocol out = build_polynomial(protocols, p);
  int c = 0;
  for (const auto& g : protocols) c = std::max(c, g.member_cost());
  if (p.is_zero()) {
    LemmaBounds b{Int(0), max_guesses_of(protocols), -1, p.variables(), c, 0, 0, false};
    return {out, b};
  }
  return {out, lemma1_bounds(p.lc(), max_guesses_of(protocols), p.degree(), p.variables(), c)};
}

CompileResult lemma2_compile(const std::vector<GuessProtocol>& protocols, const RationalFunction& r,
                             const Int& max_guesses) {
  CompileResult res = lemma1_compile(protocols, r.numerator() * r.denominator(), max_guesses);
  if (r.numerator().is_zero()) return res;
  int c = 0;
  for (const auto& g : protocols) c = std::max(c, g.member_cost());
  res.bounds = lemma2_bounds(r.lc(), max_guesses_of(protocols), r.degree(), r.variables(), c);
  return res;
}

GuessProtocol compile_univariate(const GuessProtocol& g, const IntPolynomial& p) {
  if (p.variables() != 1) throw DomainError("univariate compile needs a one-variable polynomial");
  return build_polynomial({g}, p);
}

bool MajorityResult::guesses_within() const { return protocol.guess_count() <= bounds.guesses; }
bool MajorityResult::cost_within() const { return pp_cost(protocol) <= bounds.cost; }

MajorityResult majority_compile(const std::vector<GuessProtocol>& protocols) {
  const int k = static_cast<int>(protocols.size());
  if (k < 1 || k % 2 == 0) throw DomainError("majority needs an odd number of protocols, got " + std::to_string(k));
  for (const auto& g : protocols)
    if (!(g.domain() == protocols.front().domain())) throw DomainError("protocols on different domains");

  std::vector<GuessProtocol> norm;
  norm.reserve(k);
  for (const auto& g : protocols) norm.push_back(normalize_nonzero(g));
  // |gap| <= l <= 2^(pp cost), and normalization makes gap odd.
  const int c = max_pp_cost(norm);
  auto t = separable_T(k, c);

  IntPolynomial u = (t->num * t->den).scaled(Int(2));
  IntPolynomial v = t->den * t->den;
  std::vector<GuessProtocol> us, vs;
  for (const auto& g : norm) {
    us.push_back(compile_univariate(g, u));
    vs.push_back(compile_univariate(g, v));
  }
  // prefix[i] = V_0 ... V_(i-1), suffix[i] = V_i ... V_(k-1)
  std::vector<std::optional<GuessProtocol>> prefix(k + 1), suffix(k + 1);
  for (int i = 0; i < k; ++i) prefix[i + 1] = prefix[i] ? product(*prefix[i], vs[i]) : vs[i];
  for (int i = k - 1; i >= 0; --i) suffix[i] = suffix[i + 1] ? product(vs[i], *suffix[i + 1]) : vs[i];

  std::vector<GuessProtocol> parts{*prefix[k]};
  for (int i = 0; i < k; ++i) {
    GuessProtocol term = us[i];
    if (prefix[i]) term = product(*prefix[i], term);
    if (suffix[i + 1]) term = product(term, *suffix[i + 1]);
    parts.push_back(term);
  }

  MajorityResult res{sum(parts), k, c, t->degree_per_variable(), {}};
  res.bounds = lemma2_bounds(t->coefficient_bound(), max_guesses_of(norm), t->total_degree(), k, c);
  return res;
}

}  // namespace ccl
