#include <cmath>

#include "doctest.h"

#include "ccl/core/error.hpp"
#include "ccl/measures/measures.hpp"
#include "ccl/numeric/lp.hpp"
#include "ccl/verify/generators.hpp"

using namespace ccl;
using namespace ccl::measures;

namespace {

const SignMatrix checker = SignMatrix::from_rows({{1, -1}, {-1, 1}});
const SignMatrix hadamard = SignMatrix::from_rows({{1, 1}, {1, -1}});

// disc from one LP over every rectangle, no cutting planes.
Rational disc_full_lp(const SignMatrix& a) {
  const int rows = a.rows(), cols = a.cols();
  lp::RationalMatrix payoff;
  for (const auto& r : enumerate_rectangles(rows, cols)) {
    if (r.empty()) continue;
    for (int s : {1, -1}) {
      std::vector<Rational> line(rows * cols);
      for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
          if (r.contains(i, j)) line[i * cols + j] = s * a(i, j);
      payoff.push_back(line);
    }
  }
  return lp::solve_game(payoff).value;
}

SignMatrix permuted(const SignMatrix& a, Rng& rng) {
  std::vector<int> pr(a.rows()), pc(a.cols());
  for (int i = 0; i < a.rows(); ++i) pr[i] = i;
  for (int j = 0; j < a.cols(); ++j) pc[j] = j;
  for (int i = a.rows() - 1; i > 0; --i) std::swap(pr[i], pr[rng.uniform_int(0, i)]);
  for (int j = a.cols() - 1; j > 0; --j) std::swap(pc[j], pc[rng.uniform_int(0, j)]);
  SignMatrix out(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out.set(i, j, a(pr[i], pc[j]));
  return out;
}

}  // namespace

TEST_CASE("disc_mu examples") {
  auto one = SignMatrix::from_rows({{1}});
  CHECK(disc_mu(one, InputDistribution::point_mass(1, 1, 0, 0)) == 1);
  auto j = SignMatrix::ones(3, 2);
  CHECK(disc_mu(j, InputDistribution::uniform(3, 2)) == 1);
  CHECK(disc_mu(j, InputDistribution(3, 2, {Rational(1, 2), 0, 0, Rational(1, 4), 0, Rational(1, 4)})) == 1);
  CHECK(disc_mu(checker, InputDistribution::uniform(2, 2)) == Rational(1, 4));
  CHECK_THROWS_AS(disc_mu(checker, InputDistribution::uniform(2, 3)), DomainError);
}

TEST_CASE("disc examples and grid cross-check") {
  CHECK(disc(SignMatrix::from_rows({{1}})).value == 1);
  CHECK(disc(SignMatrix::ones(2, 2)).value == 1);
  auto r = disc(checker);
  CHECK(r.value == Rational(1, 4));
  for (auto& w : r.mu.weights()) CHECK(w == Rational(1, 4));
  CHECK(disc_prime(BooleanMatrix::from_rows({{0}})).value == 1);
  CHECK(disc_prime(BooleanMatrix::from_rows({{0, 1}, {1, 0}})).value == Rational(1, 4));
  CHECK(disc_prime(BooleanMatrix(3, 3)).value == 1);

  // Every grid distribution does at least as badly as the LP optimum.
  Rational grid_best = 1;
  const int steps = 20;
  for (int a = 0; a <= steps; ++a)
    for (int b = 0; a + b <= steps; ++b)
      for (int c = 0; a + b + c <= steps; ++c) {
        int d = steps - a - b - c;
        InputDistribution mu(2, 2, {Rational(a, steps), Rational(b, steps), Rational(c, steps), Rational(d, steps)});
        grid_best = std::min(grid_best, disc_mu_enumerated(checker, mu));
      }
  CHECK(grid_best == Rational(1, 4));
}

TEST_CASE("cutting planes agree with the full rectangle LP") {
  Rng rng(3);
  for (int t = 0; t < 25; ++t) {
    int rows = static_cast<int>(rng.uniform_int(1, 3)), cols = static_cast<int>(rng.uniform_int(1, 3));
    auto a = gen::random_sign(rows, cols, rng);
    auto r = disc(a);
    CHECK(r.value == disc_full_lp(a));
    CHECK(disc_mu(a, r.mu) == r.value);
  }
}

TEST_CASE("disc invariances") {
  Rng rng(4);
  for (int t = 0; t < 30; ++t) {
    int rows = static_cast<int>(rng.uniform_int(1, 4)), cols = static_cast<int>(rng.uniform_int(1, 5));
    auto a = gen::random_sign(rows, cols, rng);
    Rational v = disc(a).value;
    CHECK(v == disc(a.transpose()).value);
    CHECK(v == disc(a.negate()).value);
    CHECK(v == disc(permuted(a, rng)).value);
    CHECK(v <= disc_mu(a, InputDistribution::uniform(rows, cols)));
    CHECK(v > 0);
    CHECK(v <= 1);
    auto mu = InputDistribution::uniform(rows, cols);
    CHECK(disc_mu(a, mu) == disc_mu_enumerated(a, mu));
  }
}

TEST_CASE("margin complexity") {
  auto j = mc(SignMatrix::ones(3, 4));
  CHECK(j.value == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(j.min_margin >= 1 - 1e-9);

  auto h = mc(hadamard, {.restarts = 100, .iterations = 1500, .seed = 1});
  CHECK(std::fabs(h.value - std::sqrt(2.0)) <= 0.05 * std::sqrt(2.0));
  CHECK(h.min_margin >= 1 - 1e-9);

  // 2-d realizations by angle: best margin of the Hadamard matrix is 1/sqrt 2.
  double best = -1;
  const int steps = 96;
  for (int a = 0; a < steps; ++a)
    for (int b = 0; b < steps; ++b)
      for (int c = 0; c < steps; ++c) {
        double x1 = 0, x2 = 2 * M_PI * a / steps, y1 = 2 * M_PI * b / steps, y2 = 2 * M_PI * c / steps;
        double m = std::min({std::cos(x1 - y1), std::cos(x1 - y2), std::cos(x2 - y1), -std::cos(x2 - y2)});
        best = std::max(best, m);
      }
  CHECK(best == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-9));
  CHECK(h.value == doctest::Approx(1 / best).epsilon(0.05));

  Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    auto a = gen::random_sign(static_cast<int>(rng.uniform_int(1, 5)), static_cast<int>(rng.uniform_int(1, 5)), rng);
    auto r = mc(a, {.restarts = 5, .iterations = 800, .seed = 2});
    CHECK(r.value >= 1 - 1e-9);
    CHECK(min_margin(a, r.realization) >= 1 - 1e-9);
    auto s = ls_sandwich_check(a, {.restarts = 5, .iterations = 800, .seed = 2});
    CHECK(s.passed());
  }
}

TEST_CASE("Klauck lower bound") {
  Domain d{2, 2};
  auto k0 = klauck_consistency(BooleanMatrix(2, 2), GuessProtocol::constant(d, false));
  CHECK(k0.holds);
  CHECK(k0.pp_cost == 0);
  CHECK(k0.log_inv_disc == 0);

  auto leaf = [&](bool b) { return DeterministicProtocol::leaf(d, b); };
  auto bob_eq0 = DeterministicProtocol::speak(d, Speaker::Bob, {0, 1}, leaf(false), leaf(true));
  auto bob_eq1 = DeterministicProtocol::speak(d, Speaker::Bob, {0, 1}, leaf(true), leaf(false));
  auto neq = DeterministicProtocol::speak(d, Speaker::Alice, {0, 1}, bob_eq0, bob_eq1);
  auto k1 = klauck_consistency(BooleanMatrix::from_rows({{0, 1}, {1, 0}}), GuessProtocol({neq}));
  CHECK(k1.log_inv_disc == doctest::Approx(2.0));
  CHECK(k1.pp_cost == 2);
  CHECK(k1.holds);
  CHECK_THROWS_AS(klauck_consistency(BooleanMatrix(2, 2), GuessProtocol({neq})), DomainError);
}

TEST_CASE("distance game matches the full LP") {
  Rng rng(6);
  for (int t = 0; t < 20; ++t) {
    auto f = gen::random_boolean(2, 3, rng);
    std::vector<std::uint64_t> codes;
    for (std::uint64_t c = 0; c < 64; ++c)
      if (rng.uniform_int(0, 3) == 0) codes.push_back(c);
    if (codes.empty()) codes.push_back(5);
    lp::RationalMatrix payoff(6, std::vector<Rational>(codes.size()));
    for (int cell = 0; cell < 6; ++cell)
      for (std::size_t c = 0; c < codes.size(); ++c) payoff[cell][c] = ((codes[c] ^ f.code()) >> cell) & 1U;
    CHECK(distance_game(f, codes).value == lp::solve_game(payoff).value);
  }
}

TEST_CASE("bp_measure examples") {
  auto count = entry_count();
  for (std::uint64_t c = 0; c < 16; ++c) {
    auto f = BooleanMatrix::from_code(2, 2, c);
    CHECK(bp_measure(count, f, 0).value == f.count_ones());
    CHECK(bp_measure(count, f, 1).value == 0);
    double prev = 1e9;
    for (Rational eps : {Rational(0), Rational(1, 8), Rational(1, 4), Rational(1, 2), Rational(1)}) {
      double v = bp_measure(count, f, eps).value;
      CHECK(v <= prev);
      prev = v;
    }
  }
  auto id = BooleanMatrix::from_rows({{1, 0}, {0, 1}});
  auto r = bp_measure(count, id, Rational(1, 4));
  CHECK(r.value == 2);
  CHECK(r.mu(0, 0) == Rational(1, 2));
  CHECK(r.mu(1, 1) == Rational(1, 2));
  CHECK(r.f_tilde.count_ones() == 2);
  CHECK(r.mu_distance <= Rational(1, 4));

  CHECK_THROWS_AS(bp_measure(count, BooleanMatrix(5, 4), 0), GuardError);
}

TEST_CASE("bp_measure with other measures") {
  auto f = BooleanMatrix::from_rows({{0, 1}, {1, 0}});
  auto ld = log_inv_disc_prime();
  CHECK(bp_measure(ld, f, 0).value == doctest::Approx(2.0));
  CHECK(bp_measure(ld, f, 1).value == doctest::Approx(0.0));

  auto family_members = enumerate_protocols({2, 2}, 1);
  std::vector<GuessProtocol> family;
  for (auto& p : family_members) family.push_back(GuessProtocol({p}));
  auto cost = best_pp_cost(family);
  CHECK(std::isinf(cost.apply(f)));
  CHECK(cost.apply(BooleanMatrix::from_rows({{0, 0}, {1, 1}})) == 1);
  // f needs depth 2. Under uniform mu every depth-1 function is 1/2 away;
  // the constants (cost 0) are within min(mu(ones), mu(zeros)) <= 1/2.
  CHECK(std::isinf(bp_measure(cost, f, Rational(1, 4)).value));
  CHECK(std::isinf(bp_measure(cost, f, Rational(49, 100)).value));
  CHECK(bp_measure(cost, f, Rational(1, 2)).value == 0);
  CHECK(std::isinf(bp_measure(cost, f, 0).value));
}
