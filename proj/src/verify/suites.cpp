#include "ccl/verify/suites.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <cmath>
#include <functional>
#include <sstream>

#include "ccl/core/error.hpp"
#include "ccl/measures/measures.hpp"
#include "ccl/poly/compile.hpp"
#include "ccl/poly/families.hpp"
#include "ccl/randomized/randomized.hpp"
#include "ccl/tarui/tarui.hpp"
#include "ccl/verify/fixtures.hpp"
#include "ccl/verify/generators.hpp"

namespace ccl::verify {
namespace {

using nlohmann::json;
using CaseFn = std::function<CaseResult(int index, Rng& rng)>;

std::string padded(int i, int width) {
  std::string s = std::to_string(i);
  return std::string(std::max(0, width - static_cast<int>(s.size())), '0') + s;
}

std::string at(int x, int y) { return "(" + std::to_string(x) + "," + std::to_string(y) + ")"; }

std::vector<CaseResult> run_cases(const std::string& prefix, int count, std::uint64_t seed, const CaseFn& fn) {
  std::vector<CaseResult> out(count);
  const int width = std::max(2, static_cast<int>(std::to_string(count - 1).size()));
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < count; ++i) {
    Rng rng(seed, static_cast<std::uint64_t>(i));
    CaseResult c;
    try {
      c = fn(i, rng);
    } catch (const std::exception& e) {
      c.fail("no exception", e.what());
    }
    c.id = prefix + "-" + padded(i, width);
    out[i] = std::move(c);
  }
  return out;
}

void append(std::vector<CaseResult>& to, std::vector<CaseResult> more) {
  for (auto& c : more) to.push_back(std::move(c));
}

SuiteReport finish(std::string name, std::vector<CaseResult> cases) {
  std::sort(cases.begin(), cases.end(), [](const CaseResult& a, const CaseResult& b) { return a.id < b.id; });
  return {std::move(name), std::move(cases)};
}

// Stream offsets keep case families within one suite independent.
std::uint64_t stream(std::uint64_t seed, std::uint64_t family) { return derive_seed(seed, 1'000'000 + family); }

bool majority_of(const std::vector<BooleanMatrix>& outs, int x, int y) {
  int yes = 0;
  for (const auto& o : outs) yes += o(x, y) ? 1 : 0;
  return 2 * yes > static_cast<int>(outs.size());
}

// gap(complement) = -gap, gap(sum) = gap + gap, gap(product) = gap * gap,
// each counted member by member.
SuiteReport gap_algebra(const SuiteOptions& o) {
  const Domain d{4, 4};
  return finish("gap-algebra", run_cases("pair", 1000, o.seed, [&](int, Rng& rng) {
                  CaseResult c;
                  GuessProtocol a = gen::random_guess(d, 4, 3, rng), b = gen::random_guess(d, 4, 3, rng);
                  GapProfile pa = gap_profile_enumerated(a), pb = gap_profile_enumerated(b);
                  GapProfile pc = gap_profile_enumerated(complement(a));
                  GapProfile ps = gap_profile_enumerated(sum(a, b));
                  GapProfile pp = gap_profile_enumerated(product(a, b));
                  GapProfile lazy = gap_profile(product(a, b));
                  for (int x = 0; x < d.x_size; ++x)
                    for (int y = 0; y < d.y_size; ++y) {
                      const Int &ga = pa.gap_at(x, y), &gb = pb.gap_at(x, y);
                      c.check(pc.gap_at(x, y) == -ga, "gap(complement) = -gap",
                              at(x, y) + ": " + to_string(pc.gap_at(x, y)) + " vs " + to_string(Int(-ga)));
                      c.check(ps.gap_at(x, y) == ga + gb, "gap(sum) = gap + gap",
                              at(x, y) + ": " + to_string(ps.gap_at(x, y)) + " vs " + to_string(Int(ga + gb)));
                      c.check(pp.gap_at(x, y) == ga * gb, "gap(product) = gap * gap",
                              at(x, y) + ": " + to_string(pp.gap_at(x, y)) + " vs " + to_string(Int(ga * gb)));
                      c.check(lazy.gap_at(x, y) == pp.gap_at(x, y), "structural gap = enumerated gap", at(x, y));
                    }
                  c.detail = {{"guesses", {to_string(a.guess_count()), to_string(b.guess_count())}}};
                  return c;
                }));
}

SuiteReport lemma1(const SuiteOptions& o) {
  const Domain dom{3, 3};
  return finish("lemma1", run_cases("instance", 200, o.seed, [&](int, Rng& rng) {
                  CaseResult c;
                  const int k = static_cast<int>(rng.uniform_int(1, 3));
                  const int d = static_cast<int>(rng.uniform_int(0, 3));
                  const int m = static_cast<int>(rng.uniform_int(1, 5));
                  std::vector<GuessProtocol> ps;
                  for (int i = 0; i < k; ++i) ps.push_back(gen::random_guess(dom, 4, 2, rng));
                  IntPolynomial p = gen::random_polynomial(k, d, m, rng);
                  CompileResult r = lemma1_compile(ps, p);

                  std::vector<GapProfile> profiles;
                  for (const auto& g : ps) profiles.push_back(gap_profile(g));
                  GapProfile out = gap_profile(r.protocol);
                  bool enumerate = r.protocol.guess_count() <= 4096;
                  GapProfile member_wise = enumerate ? gap_profile_enumerated(r.protocol) : out;
                  for (int x = 0; x < dom.x_size; ++x)
                    for (int y = 0; y < dom.y_size; ++y) {
                      std::vector<Int> z;
                      for (const auto& pr : profiles) z.push_back(pr.gap_at(x, y));
                      Int want = p.evaluate(z);
                      c.check(out.gap_at(x, y) == want, "compiled gap = p(gaps)",
                              at(x, y) + ": " + to_string(out.gap_at(x, y)) + " vs " + to_string(want));
                      c.check(member_wise.gap_at(x, y) == want, "member-wise gap = p(gaps)", at(x, y));
                    }
                  c.check(r.guesses_within(), "guess count <= M l^d (d+k)^(k+1)",
                          to_string(r.protocol.guess_count()) + " > " + to_string(r.bounds.guesses));
                  c.check(r.cost_within(), "pp_cost <= Lemma 1 cost bound",
                          std::to_string(pp_cost(r.protocol)) + " > " + std::to_string(r.bounds.cost));
                  c.detail = {{"k", k},
                              {"d", d},
                              {"M", to_string(p.lc())},
                              {"l", to_string(r.bounds.l)},
                              {"polynomial", to_string(p)},
                              {"guesses", to_string(r.protocol.guess_count())},
                              {"guess_bound", to_string(r.bounds.guesses)},
                              {"pp_cost", pp_cost(r.protocol)},
                              {"cost_bound", r.bounds.cost},
                              {"member_wise", enumerate}};
                  return c;
                }));
}

SuiteReport degm(const SuiteOptions& o) {
  return finish("degm", run_cases("km", 16, o.seed, [&](int i, Rng&) {
                  CaseResult c;
                  const int k = i / 4 + 1, m = i % 4 + 1;
                  brs::DegMOptions opts;
                  opts.seed = derive_seed(o.seed, static_cast<std::uint64_t>(i));
                  brs::DegMReport r = brs::check_degm_bounds(k, m, opts);
                  json items = json::array();
                  for (const auto& it : r.items) {
                    items.push_back({{"name", it.name}, {"passed", it.passed}, {"informational", it.informational}});
                    if (!it.informational) c.check(it.passed, it.name, it.witness.empty() ? it.detail : it.witness);
                  }
                  c.detail = {{"k", k},         {"m", m},
                              {"h_k", r.hk},    {"h_2k", r.h2k},
                              {"grid_points", r.grid_points}, {"grid_sampled", r.grid_sampled},
                              {"items", items}};
                  return c;
                }));
}

SuiteReport majority(const SuiteOptions& o) {
  const Domain d{4, 4};
  std::vector<CaseResult> cases;
  for (int k : {3, 5}) {
    append(cases, run_cases("k" + std::to_string(k), 50, stream(o.seed, k), [&, k](int, Rng& rng) {
             CaseResult c;
             std::vector<GuessProtocol> members;
             for (int i = 0; i < k; ++i) members.push_back(gen::random_guess(d, 3, 2, rng));
             MajorityResult r = majority_compile(members);
             std::vector<BooleanMatrix> outs;
             for (const auto& g : members) outs.push_back(pp_eval_grid(g));
             BooleanMatrix got = pp_eval_grid(r.protocol);
             for (int x = 0; x < d.x_size; ++x)
               for (int y = 0; y < d.y_size; ++y)
                 c.check(got(x, y) == majority_of(outs, x, y), "majority_compile = pointwise majority",
                         at(x, y) + ": accepted " + std::to_string(got(x, y)));
             c.check(r.guesses_within(), "guess count <= Lemma 2 bound", to_string(r.protocol.guess_count()));
             c.check(r.cost_within(), "pp_cost <= Lemma 2 bound",
                     std::to_string(pp_cost(r.protocol)) + " > " + std::to_string(r.bounds.cost));
             c.detail = {{"k", k},
                         {"scale", r.scale},
                         {"pp_cost", pp_cost(r.protocol)},
                         {"cost_bound", r.bounds.cost},
                         {"guess_bits", ceil_log2(r.protocol.guess_count())}};
             return c;
           }));
  }
  for (int t : {3, 5}) {
    append(cases, run_cases("amplify-t" + std::to_string(t), 5, stream(o.seed, 10 + t), [&, t](int, Rng& rng) {
             CaseResult c;
             BooleanMatrix f = gen::random_boolean(4, 4, rng);
             RandomizedPPProtocol rp = fixtures::one_third_error(f);
             AmplifyResult r = amplify(rp, t);
             Rational base = error(rp, f), e = error(r.protocol, f);
             Rational exact = 1 - majority_success(ratio(2, 3), t);
             exact.canonicalize();
             double limit = 1 - chernoff_bound(ratio(1, 6), t);
             c.check(base == ratio(1, 3), "fixture error = 1/3", to_string(base));
             c.check(e == exact, "amplified error = binomial tail", to_string(e) + " vs " + to_string(exact));
             c.check(e.get_d() <= limit, "amplified error <= 1 - chernoff_bound(1/6, t)",
                     to_string(e) + " > " + std::to_string(limit));
             c.check(r.bounds_hold, "amplified members within the Lemma 2 bound at c = bppp_cost",
                     "cost bound " + std::to_string(r.cost_bound));
             c.detail = {{"t", t},
                         {"tuples", r.tuples},
                         {"error", to_string(e)},
                         {"limit", limit},
                         {"bppp_cost", bppp_cost(r.protocol)},
                         {"cost_bound", r.cost_bound}};
             return c;
           }));
  }
  return finish("majority", std::move(cases));
}

SuiteReport equivalence(const SuiteOptions& o) {
  return finish("equivalence", run_cases("instance", 500, o.seed, [&](int, Rng& rng) {
                  CaseResult c;
                  Domain d{static_cast<int>(rng.uniform_int(1, 4)), static_cast<int>(rng.uniform_int(1, 4))};
                  GuessProtocol g = gen::random_guess(d, 6, 3, rng);
                  ThresholdForm form = pp_to_threshold(g);
                  GuessProtocol back = threshold_to_pp(g, form.threshold);
                  BooleanMatrix want = pp_eval_grid(g), got = pp_eval_grid(back);
                  GuessProtocol counter = gen::random_guess(d, 6, 3, rng);
                  Int t = rng.uniform_int(0, counter.guess_count().get_si());
                  BooleanMatrix thr = pp_eval_grid(threshold_to_pp(counter, t));
                  std::vector<Int> acc = counter.accept_grid();
                  for (int x = 0; x < d.x_size; ++x)
                    for (int y = 0; y < d.y_size; ++y) {
                      std::size_t i = static_cast<std::size_t>(x) * d.y_size + y;
                      c.check(got(x, y) == want(x, y), "threshold_to_pp . pp_to_threshold preserves acceptance",
                              at(x, y));
                      c.check((form.counting[i] > form.threshold) == want(x, y), "acc > threshold iff accepted",
                              at(x, y));
                      c.check(thr(x, y) == (acc[i] > t), "threshold_to_pp accepts where acc > threshold",
                              at(x, y) + ": acc " + to_string(acc[i]) + ", threshold " + to_string(t));
                    }
                  c.detail = {{"domain", {d.x_size, d.y_size}}, {"guesses", to_string(g.guess_count())}};
                  return c;
                }));
}

SuiteReport measures_suite(const SuiteOptions& o) {
  using namespace measures;
  std::vector<CaseResult> cases;
  const SignMatrix checker = SignMatrix::from_rows({{1, -1}, {-1, 1}});
  const SignMatrix hadamard = SignMatrix::from_rows({{1, 1}, {1, -1}});

  {
    CaseResult c;
    c.id = "disc-checker";
    DiscResult r = disc(checker);
    c.check(r.value == ratio(1, 4), "disc([[+1,-1],[-1,+1]]) = 1/4", to_string(r.value));
    c.check(disc_mu_enumerated(checker, r.mu) == r.value, "LP optimum = rectangle enumeration at its mu",
            to_string(disc_mu_enumerated(checker, r.mu)));
    // Grid of distributions with step 1/20.
    Rational grid_best = 1;
    for (int a = 0; a <= 20; ++a)
      for (int b = 0; a + b <= 20; ++b)
        for (int e = 0; a + b + e <= 20; ++e) {
          InputDistribution mu(2, 2, {ratio(a, 20), ratio(b, 20), ratio(e, 20), ratio(20 - a - b - e, 20)});
          grid_best = std::min(grid_best, disc_mu_enumerated(checker, mu));
        }
    c.check(grid_best == r.value, "grid minimum = LP value", to_string(grid_best));
    c.detail = {{"disc", to_string(r.value)}, {"grid_min", to_string(grid_best)}};
    cases.push_back(c);
  }
  {
    CaseResult c;
    c.id = "mc-hadamard";
    McOptions opts;
    opts.seed = o.seed;
    McResult r = mc(hadamard, opts);
    double rel = std::abs(r.value - std::sqrt(2.0)) / std::sqrt(2.0);
    c.check(rel <= 0.05, "mc(H2) = sqrt 2 within 5%", std::to_string(r.value));
    c.check(r.min_margin >= 1 - 1e-9, "realization margins >= 1", std::to_string(r.min_margin));
    c.detail = {{"mc", r.value}, {"relative_error", rel}};
    cases.push_back(c);
  }
  append(cases, run_cases("sandwich", 100, stream(o.seed, 1), [&](int i, Rng& rng) {
           CaseResult c;
           int rows = static_cast<int>(rng.uniform_int(1, 5)), cols = static_cast<int>(rng.uniform_int(1, 5));
           SignMatrix a = gen::random_sign(rows, cols, rng);
           McOptions opts;
           opts.seed = derive_seed(o.seed, static_cast<std::uint64_t>(i));
           SandwichReport r = ls_sandwich_check(a, opts);
           c.check(r.lower_ok, "mc * disc >= 1/8", std::to_string(r.product));
           c.check(r.upper_ok, "mc * disc <= 8", std::to_string(r.product));
           c.detail = {{"shape", {rows, cols}}, {"disc", to_string(r.disc)}, {"mc", r.mc}, {"product", r.product}};
           return c;
         }));
  auto klauck_case = [](const GuessProtocol& g) {
    CaseResult c;
    BooleanMatrix f = pp_eval_grid(g);
    KlauckReport k = klauck_consistency(f, g);
    c.check(k.holds, "log2(1/disc') <= pp_cost",
            std::to_string(k.log_inv_disc) + " > " + std::to_string(k.pp_cost));
    c.detail = {{"disc_prime", to_string(k.disc_prime)}, {"log_inv_disc", k.log_inv_disc}, {"pp_cost", k.pp_cost}};
    return c;
  };
  append(cases, run_cases("klauck-random", 40, stream(o.seed, 2), [&](int, Rng& rng) {
           Domain d{static_cast<int>(rng.uniform_int(1, 4)), static_cast<int>(rng.uniform_int(1, 4))};
           return klauck_case(gen::random_guess(d, 4, 3, rng));
         }));
  append(cases, run_cases("klauck-lemma1", 10, stream(o.seed, 3), [&](int, Rng& rng) {
           int k = static_cast<int>(rng.uniform_int(1, 2));
           std::vector<GuessProtocol> ps;
           for (int i = 0; i < k; ++i) ps.push_back(gen::random_guess({3, 3}, 3, 2, rng));
           return klauck_case(lemma1_compile(ps, gen::random_polynomial(k, 2, 3, rng)).protocol);
         }));
  append(cases, run_cases("klauck-majority", 10, stream(o.seed, 4), [&](int, Rng& rng) {
           std::vector<GuessProtocol> ps;
           for (int i = 0; i < 3; ++i) ps.push_back(gen::random_guess({3, 3}, 3, 2, rng));
           return klauck_case(majority_compile(ps).protocol);
         }));
  return finish("measures", std::move(cases));
}

// Distributions on 4 cells in steps of 1/100, as integer hundredths.
const std::vector<std::array<int, 4>>& hundredths_grid() {
  static const std::vector<std::array<int, 4>> grid = [] {
    std::vector<std::array<int, 4>> g;
    for (int a = 0; a <= 100; ++a)
      for (int b = 0; a + b <= 100; ++b)
        for (int e = 0; a + b + e <= 100; ++e) g.push_back({a, b, e, 100 - a - b - e});
    return g;
  }();
  return grid;
}

// max over grid mu of min { ones(g) : mu(f != g) <= eps } over all 2x2 g.
double grid_bp_entry_count(const BooleanMatrix& f, const Rational& eps) {
  const auto& grid = hundredths_grid();
  const Rational scaled = eps * 100;
  const long n = static_cast<long>(grid.size());
  int best = 0;
#pragma omp parallel for reduction(max : best)
  for (long i = 0; i < n; ++i) {
    int inner = 1 << 30;
    for (std::uint64_t g = 0; g < 16; ++g) {
      std::uint64_t diff = g ^ f.code();
      int dist = 0;
      for (int cell = 0; cell < 4; ++cell)
        if ((diff >> cell) & 1U) dist += grid[i][cell];
      if (Rational(dist) <= scaled) inner = std::min(inner, __builtin_popcountll(g));
    }
    best = std::max(best, inner);
  }
  return best;
}

SuiteReport bp(const SuiteOptions&) {
  using namespace measures;
  const MeasureFn count = entry_count();
  const std::vector<Rational> eps_list{Rational(0), ratio(1, 8), ratio(1, 4), ratio(1, 2), Rational(1)};
  std::vector<CaseResult> cases;
  auto exact_and_monotone = [&](int rows, int cols, std::uint64_t code, bool grid) {
    CaseResult c;
    BooleanMatrix f = BooleanMatrix::from_code(rows, cols, code);
    double prev = std::numeric_limits<double>::infinity();
    json values = json::array();
    for (const auto& eps : eps_list) {
      BpResult r = bp_measure(count, f, eps);
      values.push_back(r.value);
      if (sgn(eps) == 0) c.check(r.value == f.count_ones(), "bp(count, f, 0) = count(f)", std::to_string(r.value));
      c.check(r.value <= prev, "non-increasing in eps", "eps " + to_string(eps) + ": " + std::to_string(r.value));
      prev = r.value;
      if (grid) {
        Rational lower = eps - ratio(1, 50);
        if (sgn(lower) < 0) lower = 0;
        double lo = grid_bp_entry_count(f, eps), hi = grid_bp_entry_count(f, lower);
        c.check(lo <= r.value && r.value <= hi, "grid(eps) <= bp <= grid(eps - 0.02)",
                "eps " + to_string(eps) + ": " + std::to_string(lo) + " <= " + std::to_string(r.value) +
                    " <= " + std::to_string(hi));
      }
    }
    c.detail = {{"code", code}, {"values", values}};
    return c;
  };
  append(cases, run_cases("entry-2x2", 16, 0, [&](int i, Rng&) { return exact_and_monotone(2, 2, i, true); }));
  append(cases, run_cases("entry-3x3", 512, 0, [&](int i, Rng&) { return exact_and_monotone(3, 3, i, false); }));
  {
    CaseResult c;
    c.id = "identity-quarter";
    BpResult r = bp_measure(count, BooleanMatrix::from_rows({{1, 0}, {0, 1}}), ratio(1, 4));
    c.check(r.value == 2, "bp(count, I2, 1/4) = 2", std::to_string(r.value));
    c.detail = {{"value", r.value}, {"mu_distance", to_string(r.mu_distance)}};
    cases.push_back(c);
  }
  return finish("bp", std::move(cases));
}

SuiteReport yao(const SuiteOptions& o) {
  static const std::vector<GuessProtocol> family = [] {
    std::vector<GuessProtocol> f;
    for (const auto& p : enumerate_protocols({2, 2}, 2)) f.push_back(GuessProtocol({p}));
    return f;
  }();
  return finish("yao", run_cases("instance", 50, o.seed, [&](int i, Rng& rng) {
                  CaseResult c;
                  BooleanMatrix f = gen::random_boolean(2, 2, rng);
                  std::vector<GuessProtocol> fam;
                  if (i % 10 == 0) {
                    fam = family;
                  } else {
                    int size = static_cast<int>(rng.uniform_int(1, 40));
                    for (int j = 0; j < size; ++j)
                      fam.push_back(family[rng.uniform_int(0, static_cast<std::int64_t>(family.size()) - 1)]);
                  }
                  YaoReport r = yao_minimax_check(f, fam, ratio(1, 3));
                  c.check(r.agree, "primal and dual game values agree within 1e-9",
                          to_string(r.protocol_side) + " vs " + to_string(r.input_side));

                  // Each strategy certifies its own side.
                  std::vector<std::uint64_t> codes;
                  std::vector<Rational> row_payoff(4, Rational(0));
                  Rational total = 0;
                  for (std::size_t j = 0; j < fam.size(); ++j) {
                    std::uint64_t diff = pp_eval_grid(fam[j]).code() ^ f.code();
                    codes.push_back(pp_eval_grid(fam[j]).code());
                    total += r.family_strategy[j];
                    for (int cell = 0; cell < 4; ++cell)
                      if ((diff >> cell) & 1U) row_payoff[cell] += r.family_strategy[j];
                  }
                  c.check(total == 1, "family strategy sums to 1", to_string(total));
                  c.check(*std::max_element(row_payoff.begin(), row_payoff.end()) == r.protocol_side,
                          "family strategy attains the value", to_string(r.protocol_side));
                  Rational col_min = 1;
                  for (auto code : codes) {
                    Rational v = 0;
                    for (int cell = 0; cell < 4; ++cell)
                      if (((code ^ f.code()) >> cell) & 1U) v += r.input_strategy[cell];
                    col_min = std::min(col_min, v);
                  }
                  c.check(col_min == r.input_side, "input strategy attains the value", to_string(col_min));
                  std::sort(codes.begin(), codes.end());
                  codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
                  Rational game = measures::distance_game(f, codes).value;
                  c.check(game == r.protocol_side, "value = column-generation distance game", to_string(game));
                  c.detail = {{"matrix", f.code()},
                              {"family", fam.size()},
                              {"distinct", r.distinct_columns},
                              {"protocol_side", to_string(r.protocol_side)},
                              {"input_side", to_string(r.input_side)}};
                  return c;
                }));
}

SuiteReport tarui_suite(const SuiteOptions& o) {
  std::vector<CaseResult> cases;
  for (const auto& name : fixtures::pipeline_fixture_names()) {
    CaseResult c;
    c.id = "fixture-" + name;
    auto fx = fixtures::pipeline_fixture(name);
    tarui::PipelineReport r = tarui::pipeline(fx.rphi, fx.target);
    c.check(r.violations.empty(), "max error <= 1/3", to_string(r.max_error));
    for (std::size_t m = 0; m < r.members.size(); ++m) {
      const auto& mr = r.members[m];
      std::string w = "member " + std::to_string(m);
      c.check(mr.counting_matches, "acc = phi + g", w);
      c.check(mr.threshold_matches, "accepts iff phi > 0", w);
      c.check(mr.within_bounds(), "guesses <= 2 sum|c| and cost <= ceil log + 2", w);
      c.check(mr.klauck.holds, "log2(1/disc') <= pp_cost", w);
    }
    Rational want = name == "boundary" ? ratio(1, 3) : Rational(0);
    c.check(r.max_error == want, "fixture error", to_string(r.max_error) + " vs " + to_string(want));
    if (sgn(want) == 0)
      c.check(pp_eval_grid(r.protocol.support().front().protocol) == fx.target, "accepts exactly L", name);
    c.detail = tarui::to_json(r);
    cases.push_back(c);
  }
  append(cases, run_cases("random-phi", 200, o.seed, [&](int, Rng& rng) {
           CaseResult c;
           Domain d{static_cast<int>(rng.uniform_int(1, 4)), static_cast<int>(rng.uniform_int(1, 4))};
           std::vector<tarui::RectangleTerm> terms;
           int n = static_cast<int>(rng.uniform_int(0, 6));
           for (int i = 0; i < n; ++i) {
             long coef = 0;
             while (coef == 0) coef = static_cast<long>(rng.uniform_int(-4, 4));
             std::vector<std::uint8_t> f(d.x_size), g(d.y_size);
             for (auto& b : f) b = rng.coin() ? 1 : 0;
             for (auto& b : g) b = rng.coin() ? 1 : 0;
             terms.push_back({Int(coef), f, g});
           }
           tarui::RectangleTermPolynomial phi(d, terms);
           tarui::Shift s = tarui::shift_nonnegative(phi);
           GuessProtocol counting = tarui::counting_to_guess(s.psi);
           BooleanMatrix accepted = pp_eval_grid(threshold_to_pp(counting, s.g));
           auto phi_grid = tarui::eval_phi_grid(phi);
           auto psi_grid = tarui::eval_counting_grid(s.psi);
           auto acc = gap_profile_enumerated(counting).acc;
           for (int x = 0; x < d.x_size; ++x)
             for (int y = 0; y < d.y_size; ++y) {
               std::size_t i = static_cast<std::size_t>(x) * d.y_size + y;
               c.check(psi_grid[i] == phi_grid[i] + s.g, "psi = phi + g", at(x, y));
               c.check(acc[i] == psi_grid[i], "acc = psi", at(x, y));
               c.check(accepted(x, y) == (sgn(phi_grid[i]) > 0), "accepts iff phi > 0", at(x, y));
             }
           c.detail = {{"terms", n}, {"g", to_string(s.g)}};
           return c;
         }));
  return finish("tarui", std::move(cases));
}

using SuiteFn = SuiteReport (*)(const SuiteOptions&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r{
      {"gap-algebra", gap_algebra}, {"lemma1", lemma1}, {"degm", degm},        {"majority", majority},
      {"equivalence", equivalence}, {"measures", measures_suite}, {"bp", bp}, {"yao", yao},
      {"tarui", tarui_suite}};
  return r;
}

}  // namespace

void CaseResult::fail(std::string inv, std::string wit) {
  if (!passed) return;
  passed = false;
  invariant = std::move(inv);
  witness = std::move(wit);
}

void CaseResult::check(bool ok, const std::string& inv, const std::string& wit) {
  if (!ok) fail(inv, wit);
}

std::size_t SuiteReport::failures() const {
  return static_cast<std::size_t>(std::count_if(cases.begin(), cases.end(), [](const auto& c) { return !c.passed; }));
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, fn] : registry()) n.push_back(name);
    return n;
  }();
  return names;
}

std::vector<SuiteReport> run_suite(const std::string& name, const SuiteOptions& opts) {
  std::vector<SuiteReport> out;
  for (const auto& [n, fn] : registry())
    if (name == "all" || name == n) out.push_back(fn(opts));
  if (out.empty()) {
    std::string known = "all";
    for (const auto& n : suite_names()) known += ", " + n;
    throw DomainError("unknown suite '" + name + "' (known: " + known + ")");
  }
  return out;
}

json guards_json() {
  return {{"materialize_limit", to_string(kMaterializeLimit)},
          {"max_amplify_tuples", kMaxAmplifyTuples},
          {"max_bp_cells", measures::kMaxBpCells},
          {"max_side", kDefaultMaxSide},
          {"max_arity", brs::kMaxArity},
          {"max_scale", brs::kMaxScale}};
}

json report_json(const std::vector<SuiteReport>& reports, const SuiteOptions& opts) {
  json suites = json::array();
  bool all = true;
  for (const auto& r : reports) {
    json results = json::array();
    for (const auto& c : r.cases) {
      json j = {{"id", c.id}, {"passed", c.passed}};
      if (!c.passed) {
        j["invariant"] = c.invariant;
        j["witness"] = c.witness;
      }
      if (!c.detail.empty()) j["detail"] = c.detail;
      results.push_back(j);
    }
    all = all && r.passed();
    suites.push_back({{"suite", r.suite},
                      {"cases", r.cases.size()},
                      {"passed", r.cases.size() - r.failures()},
                      {"failed", r.failures()},
                      {"results", results}});
  }
  return {{"tool", "ccl"},
          {"version", CCL_VERSION},
          {"seed", opts.seed},
          {"guards", guards_json()},
          {"suites", suites},
          {"passed", all}};
}

}  // namespace ccl::verify
