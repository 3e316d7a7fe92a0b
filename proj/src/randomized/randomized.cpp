#include "ccl/randomized/randomized.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>

#include "ccl/core/error.hpp"
#include "ccl/numeric/lp.hpp"
#include "ccl/numeric/random.hpp"

namespace ccl {
namespace {

void check_shape(const RandomizedPPProtocol& rp, const BooleanMatrix& f) {
  Domain d = rp.domain();
  if (d.x_size != f.rows() || d.y_size != f.cols())
    throw DomainError("protocol domain is " + std::to_string(d.x_size) + "x" + std::to_string(d.y_size) +
                      " but the matrix is " + std::to_string(f.rows()) + "x" + std::to_string(f.cols()));
}

// wrong[i] = 1 where pp_eval(g) != f, row-major
std::vector<std::uint8_t> mistakes(const GuessProtocol& g, const BooleanMatrix& f) {
  BooleanMatrix out = pp_eval_grid(g);
  std::vector<std::uint8_t> wrong(f.bits().size());
  for (std::size_t i = 0; i < wrong.size(); ++i) wrong[i] = out.bits()[i] != f.bits()[i] ? 1 : 0;
  return wrong;
}

std::vector<Rational> weighted_errors(const std::vector<std::vector<std::uint8_t>>& wrong,
                                      const std::vector<Rational>& probs, std::size_t cells) {
  std::vector<Rational> grid(cells, Rational(0));
  for (std::size_t m = 0; m < wrong.size(); ++m)
    for (std::size_t i = 0; i < cells; ++i)
      if (wrong[m][i]) grid[i] += probs[m];
  return grid;
}

Rational max_of(const std::vector<Rational>& v) {
  Rational best = 0;
  for (const auto& q : v)
    if (q > best) best = q;
  return best;
}

}  // namespace

RandomizedPPProtocol::RandomizedPPProtocol(std::vector<Entry> support) : support_(std::move(support)) {
  if (support_.empty()) throw DomainError("randomized protocol needs at least one member");
  Rational total = 0;
  for (auto& e : support_) {
    e.probability.canonicalize();
    if (sgn(e.probability) < 0) throw DomainError("negative probability " + to_string(e.probability));
    if (!(e.protocol.domain() == support_.front().protocol.domain()))
      throw DomainError("randomized protocol members on different domains");
    total += e.probability;
  }
  if (total != 1) throw DomainError("probabilities sum to " + to_string(total) + ", not 1");
}

RandomizedPPProtocol RandomizedPPProtocol::uniform(const std::vector<GuessProtocol>& members) {
  if (members.empty()) throw DomainError("randomized protocol needs at least one member");
  std::vector<Entry> s;
  const Rational p = ratio(1, Int(static_cast<unsigned long>(members.size())));
  for (const auto& g : members) s.push_back({g, p});
  return RandomizedPPProtocol(std::move(s));
}

std::vector<Rational> error_grid(const RandomizedPPProtocol& rp, const BooleanMatrix& f) {
  check_shape(rp, f);
  const auto& s = rp.support();
  std::vector<std::vector<std::uint8_t>> wrong(s.size());
  const long n = static_cast<long>(s.size());
#pragma omp parallel for schedule(dynamic)
  for (long m = 0; m < n; ++m)
    if (sgn(s[m].probability) > 0) wrong[m] = mistakes(s[m].protocol, f);
  std::vector<Rational> probs;
  for (std::size_t m = 0; m < s.size(); ++m) {
    if (wrong[m].empty()) wrong[m].assign(f.bits().size(), 0);
    probs.push_back(s[m].probability);
  }
  return weighted_errors(wrong, probs, f.bits().size());
}

Rational error(const RandomizedPPProtocol& rp, const BooleanMatrix& f) { return max_of(error_grid(rp, f)); }

int bppp_cost(const RandomizedPPProtocol& rp) {
  int c = 0;
  for (const auto& e : rp.support())
    if (sgn(e.probability) > 0) c = std::max(c, pp_cost(e.protocol));
  return c;
}

double chernoff_bound(const Rational& eps, int t) {
  if (sgn(eps) <= 0 || eps > ratio(1, 2)) throw DomainError("eps must lie in (0, 1/2], got " + to_string(eps));
  if (t < 1 || t % 2 == 0) throw DomainError("t must be odd and positive, got " + std::to_string(t));
  Rational base = 1 - 4 * eps * eps;
  base.canonicalize();
  long double b = static_cast<long double>(base.get_d());
  long double v = 1.0L - 0.5L * std::pow(b, static_cast<long double>(t) / 2.0L);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12Lg", v);
  return std::strtod(buf, nullptr);
}

Rational majority_success(const Rational& p, int t) {
  if (t < 1 || t % 2 == 0) throw DomainError("t must be odd and positive, got " + std::to_string(t));
  Rational q = 1 - p;
  q.canonicalize();
  Rational total = 0;
  for (int s = t / 2 + 1; s <= t; ++s) {
    Int binom = factorial(t) / (factorial(s) * factorial(t - s));
    Rational term = binom;
    for (int i = 0; i < s; ++i) term *= p;
    for (int i = 0; i < t - s; ++i) term *= q;
    total += term;
  }
  total.canonicalize();
  return total;
}

AmplifyResult amplify(const RandomizedPPProtocol& rp, int t) {
  if (t < 1 || t % 2 == 0) throw DomainError("amplification needs odd t, got " + std::to_string(t));
  const auto& s = rp.support();
  const long n = static_cast<long>(s.size());
  Int tuples = pow_int(Int(n), static_cast<unsigned long>(t));
  if (tuples > Int(kMaxAmplifyTuples))
    throw GuardError("amplification would have " + tuples.get_str() + " tuples (limit " +
                     std::to_string(kMaxAmplifyTuples) + ")");
  const long count = tuples.get_si();
  const int c = bppp_cost(rp);

  std::vector<RandomizedPPProtocol::Entry> out(count, {s.front().protocol, Rational(0)});
  std::vector<std::uint8_t> within(count, 1);
  std::vector<int> bound(count, 0);
#pragma omp parallel for schedule(dynamic)
  for (long idx = 0; idx < count; ++idx) {
    std::vector<GuessProtocol> members;
    Rational p = 1;
    long rest = idx;
    for (int j = 0; j < t; ++j) {
      const auto& e = s[rest % n];
      rest /= n;
      members.push_back(e.protocol);
      p *= e.probability;
    }
    p.canonicalize();
    MajorityResult m = majority_compile(members);
    LemmaBounds b = lemma2_bounds(m.bounds.M, m.bounds.l, m.bounds.d, m.bounds.k, c);
    bound[idx] = b.cost;
    within[idx] = pp_cost(m.protocol) <= b.cost && m.guesses_within() ? 1 : 0;
    out[idx] = {m.protocol, p};
  }
  AmplifyResult res{RandomizedPPProtocol(std::move(out)), static_cast<std::size_t>(count), 0, true};
  for (long i = 0; i < count; ++i) {
    res.cost_bound = std::max(res.cost_bound, bound[i]);
    res.bounds_hold = res.bounds_hold && within[i];
  }
  return res;
}

SparsifyResult newman_sparsify(const RandomizedPPProtocol& rp, const BooleanMatrix& f, const Rational& delta,
                               int trials, std::uint64_t seed, int max_attempts) {
  if (sgn(delta) < 0) throw DomainError("delta must be nonnegative, got " + to_string(delta));
  if (trials < 1) throw DomainError("trials must be positive");
  const auto& s = rp.support();
  std::vector<double> cumulative;
  double acc = 0;
  for (const auto& e : s) cumulative.push_back(acc += e.probability.get_d());

  // Each member's mistakes are computed once and reused across draws.
  std::vector<std::vector<std::uint8_t>> wrong(s.size());
  check_shape(rp, f);
  for (std::size_t m = 0; m < s.size(); ++m) wrong[m] = mistakes(s[m].protocol, f);
  std::vector<Rational> probs;
  for (const auto& e : s) probs.push_back(e.probability);
  const Rational base = max_of(weighted_errors(wrong, probs, f.bits().size()));
  const Rational limit = base + delta;

  SparsifyResult res{rp, base, base, 0, {}};
  const Rational w = ratio(1, trials);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    Rng rng(seed, static_cast<std::uint64_t>(attempt));
    std::vector<std::size_t> pick;
    for (int i = 0; i < trials; ++i) {
      double u = rng.uniform01() * acc;
      auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
      std::size_t m = std::min<std::size_t>(it - cumulative.begin(), s.size() - 1);
      while (sgn(s[m].probability) == 0 && m > 0) --m;  // never pick a zero-probability member
      pick.push_back(m);
    }
    std::vector<std::vector<std::uint8_t>> w_wrong;
    for (auto m : pick) w_wrong.push_back(wrong[m]);
    Rational e = max_of(weighted_errors(w_wrong, std::vector<Rational>(trials, w), f.bits().size()));
    res.attempt_errors.push_back(e);
    res.attempts = attempt + 1;
    if (e <= limit) {
      std::vector<RandomizedPPProtocol::Entry> out;
      for (auto m : pick) out.push_back({s[m].protocol, w});
      res.protocol = RandomizedPPProtocol(std::move(out));
      res.error = e;
      return res;
    }
  }
  std::string seen;
  for (std::size_t i = 0; i < res.attempt_errors.size(); ++i)
    seen += (i ? ", " : "") + to_string(res.attempt_errors[i]);
  throw InvariantError("newman sparsification",
                       std::to_string(max_attempts) + " draws all exceeded error " + to_string(limit) +
                           "; measured errors: " + seen);
}

YaoReport yao_minimax_check(const BooleanMatrix& f, const std::vector<GuessProtocol>& family, const Rational& eps) {
  if (family.empty()) throw DomainError("yao check needs a nonempty family");
  for (const auto& g : family)
    if (g.domain().x_size != f.rows() || g.domain().y_size != f.cols())
      throw DomainError("family member domain does not match the matrix");
  const std::size_t cells = f.bits().size();

  std::vector<std::vector<std::uint8_t>> wrong(family.size());
  const long n = static_cast<long>(family.size());
#pragma omp parallel for schedule(dynamic)
  for (long j = 0; j < n; ++j) wrong[j] = mistakes(family[j], f);

  // Identical columns do not change the game; solve on the distinct ones.
  std::map<std::vector<std::uint8_t>, std::size_t> first;
  std::vector<std::size_t> rep;  // distinct column -> family index
  for (std::size_t j = 0; j < family.size(); ++j)
    if (first.emplace(wrong[j], rep.size()).second) rep.push_back(j);

  lp::RationalMatrix payoff(cells, std::vector<Rational>(rep.size()));
  for (std::size_t i = 0; i < cells; ++i)
    for (std::size_t c = 0; c < rep.size(); ++c) payoff[i][c] = wrong[rep[c]][i];
  lp::TwoSidedSolution sol = lp::solve_game_two_sided(payoff);

  YaoReport r;
  r.protocol_side = sol.column_side.value;
  r.input_side = sol.row_side.value;
  r.family_strategy.assign(family.size(), Rational(0));
  for (std::size_t c = 0; c < rep.size(); ++c) r.family_strategy[rep[c]] = sol.column_side.col_strategy[c];
  r.input_strategy = sol.row_side.row_strategy;
  r.distinct_columns = rep.size();
  Rational diff = abs(r.protocol_side - r.input_side);
  r.agree = diff.get_d() <= 1e-9;
  r.within_eps = r.protocol_side <= eps;
  return r;
}

}  // namespace ccl
