#include <cmath>
#include <set>

#include "doctest.h"

#include "ccl/core/error.hpp"
#include "ccl/measures/measures.hpp"
#include "ccl/protocols/builders.hpp"
#include "ccl/randomized/randomized.hpp"
#include "ccl/verify/generators.hpp"

using namespace ccl;

namespace {

GuessProtocol single(const DeterministicProtocol& p) { return GuessProtocol({p}); }

BooleanMatrix flipped(const BooleanMatrix& f, int residue) {
  BooleanMatrix g = f;
  for (int i = 0; i < f.rows(); ++i)
    for (int j = 0; j < f.cols(); ++j)
      if ((i * f.cols() + j) % 3 == residue) g.set(i, j, !f(i, j));
  return g;
}

// Three equally likely members, each wrong on its own third of the inputs.
RandomizedPPProtocol third_wrong(const BooleanMatrix& f) {
  return RandomizedPPProtocol::uniform(
      {single(table_protocol(flipped(f, 0))), single(table_protocol(flipped(f, 1))),
       single(table_protocol(flipped(f, 2)))});
}

DeterministicProtocol chain(Domain d, int depth) {
  auto p = DeterministicProtocol::leaf(d, true);
  std::vector<std::uint8_t> table(d.x_size, 1);
  for (int i = 0; i < depth; ++i) p = DeterministicProtocol::speak(d, Speaker::Alice, table, p, p);
  return p;
}

// Pr over t-tuples that the majority of member outputs differs from f,
// maxed over inputs; evaluated member by member.
Rational majority_error_oracle(const RandomizedPPProtocol& rp, const BooleanMatrix& f, int t) {
  const auto& s = rp.support();
  std::vector<BooleanMatrix> outs;
  for (const auto& e : s) outs.push_back(pp_eval_grid(e.protocol));
  long n = static_cast<long>(s.size()), total = 1;
  for (int j = 0; j < t; ++j) total *= n;
  Rational worst = 0;
  for (int x = 0; x < f.rows(); ++x)
    for (int y = 0; y < f.cols(); ++y) {
      Rational wrong = 0;
      for (long idx = 0; idx < total; ++idx) {
        long rest = idx;
        int yes = 0;
        Rational p = 1;
        for (int j = 0; j < t; ++j) {
          yes += outs[rest % n](x, y) ? 1 : 0;
          p *= s[rest % n].probability;
          rest /= n;
        }
        if ((2 * yes > t) != f(x, y)) wrong += p;
      }
      wrong.canonicalize();
      if (wrong > worst) worst = wrong;
    }
  return worst;
}

}  // namespace

TEST_CASE("table and rectangle protocols") {
  Rng rng(3);
  for (int rows : {1, 2, 3, 4, 5, 8}) {
    BooleanMatrix f = gen::random_boolean(rows, 3, rng);
    auto p = table_protocol(f);
    CHECK(p.cost() == ceil_log2(static_cast<std::uint64_t>(rows)) + 1);
    for (int x = 0; x < rows; ++x)
      for (int y = 0; y < 3; ++y) CHECK(p.eval(x, y) == f(x, y));
  }
  auto r = rectangle_protocol({1, 0, 1}, {0, 1});
  CHECK(r.cost() == 2);
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 2; ++y) CHECK(r.eval(x, y) == (x != 1 && y == 1));
}

TEST_CASE("randomized protocol validation") {
  Domain d{2, 2};
  auto a = GuessProtocol::constant(d, true);
  CHECK_THROWS_AS(RandomizedPPProtocol({{a, Rational(1, 2)}}), DomainError);
  CHECK_THROWS_AS(RandomizedPPProtocol({{a, Rational(3, 2)}, {a, Rational(-1, 2)}}), DomainError);
  CHECK_THROWS_AS(RandomizedPPProtocol({}), DomainError);
  CHECK_THROWS_AS(RandomizedPPProtocol({{a, Rational(1, 2)}, {GuessProtocol::constant({2, 3}, true), Rational(1, 2)}}),
                  DomainError);
  RandomizedPPProtocol ok({{a, Rational(2, 4)}, {a, Rational(1, 2)}});
  CHECK(ok.support()[0].probability == Rational(1, 2));
  CHECK_THROWS_AS(error(ok, BooleanMatrix(3, 2)), DomainError);
}

TEST_CASE("error examples") {
  Rng rng(11);
  BooleanMatrix f = gen::random_boolean(4, 4, rng);
  auto right = single(table_protocol(f));
  CHECK(error(RandomizedPPProtocol({{right, Rational(1)}}), f) == 0);

  BooleanMatrix inverse(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) inverse.set(i, j, !f(i, j));
  auto coin = RandomizedPPProtocol::uniform({right, single(table_protocol(inverse))});
  CHECK(error(coin, f) == Rational(1, 2));
  for (const auto& e : error_grid(coin, f)) CHECK(e == Rational(1, 2));

  auto rp = third_wrong(f);
  CHECK(error(rp, f) == Rational(1, 3));

  // Uneven weights on random members, against a direct count.
  std::vector<RandomizedPPProtocol::Entry> s;
  std::vector<Rational> w{Rational(1, 6), Rational(1, 3), Rational(1, 2)};
  for (int m = 0; m < 3; ++m) s.push_back({gen::random_guess({4, 4}, 3, 3, rng), w[m]});
  RandomizedPPProtocol mixed(s);
  auto grid = error_grid(mixed, f);
  Rational worst = 0;
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) {
      Rational e = 0;
      for (const auto& en : s)
        if (pp_eval(en.protocol, x, y) != f(x, y)) e += en.probability;
      CHECK(grid[x * 4 + y] == e);
      if (e > worst) worst = e;
    }
  CHECK(error(mixed, f) == worst);
}

TEST_CASE("bppp_cost examples") {
  Domain d{8, 2};
  auto four = single(chain(d, 4));
  CHECK(bppp_cost(RandomizedPPProtocol({{four, Rational(1)}})) == 4);
  auto two = single(chain(d, 2));
  auto five = single(chain(d, 5));
  CHECK(bppp_cost(RandomizedPPProtocol({{two, Rational(1, 2)}, {five, Rational(1, 2)}})) == 5);
  auto deep = single(chain(d, 99));
  CHECK(bppp_cost(RandomizedPPProtocol({{two, Rational(1)}, {deep, Rational(0)}})) == 2);
  CHECK(pp_cost(deep) == 99);
}

TEST_CASE("chernoff bound") {
  for (int t : {1, 3, 5, 7}) CHECK(chernoff_bound(Rational(1, 2), t) == 1.0);
  CHECK(chernoff_bound(Rational(1, 6), 3) == doctest::Approx(1 - 0.5 * std::pow(8.0 / 9.0, 1.5)).epsilon(1e-12));
  CHECK(chernoff_bound(Rational(1, 6), 3) == doctest::Approx(0.5810).epsilon(1e-4));
  CHECK(majority_success(Rational(2, 3), 3) == Rational(20, 27));
  CHECK(majority_success(Rational(2, 3), 5) == Rational(64, 81));
  CHECK(majority_success(Rational(2, 3), 1) == Rational(2, 3));
  CHECK_THROWS_AS(chernoff_bound(Rational(0), 3), DomainError);
  CHECK_THROWS_AS(chernoff_bound(Rational(3, 5), 3), DomainError);
  CHECK_THROWS_AS(chernoff_bound(Rational(1, 4), 2), DomainError);
  // The bound never exceeds the exact binomial success probability.
  for (int num = 1; num <= 10; ++num)
    for (int t : {1, 3, 5, 7, 9}) {
      Rational eps(num, 20);
      eps.canonicalize();
      Rational p = ratio(1, 2) + eps;
      p.canonicalize();
      CHECK(majority_success(p, t).get_d() >= chernoff_bound(eps, t) - 1e-12);
    }
}

TEST_CASE("amplify of a one-third-error protocol") {
  Rng rng(5);
  BooleanMatrix f = gen::random_boolean(4, 4, rng);
  auto rp = third_wrong(f);

  auto one = amplify(rp, 1);
  CHECK(one.tuples == 3);
  CHECK(error(one.protocol, f) == Rational(1, 3));

  auto three = amplify(rp, 3);
  CHECK(three.tuples == 27);
  CHECK(three.bounds_hold);
  Rational e3 = error(three.protocol, f);
  CHECK(e3 == Rational(7, 27));
  CHECK(e3 == majority_error_oracle(rp, f, 3));
  CHECK(e3.get_d() <= 1 - chernoff_bound(Rational(1, 6), 3));
  CHECK(e3.get_d() <= 0.4190);
  CHECK(bppp_cost(three.protocol) <= three.cost_bound);

  auto five = amplify(rp, 5);
  Rational e5 = error(five.protocol, f);
  CHECK(e5 == 1 - majority_success(Rational(2, 3), 5));
  CHECK(e5.get_d() <= 1 - chernoff_bound(Rational(1, 6), 5));
  CHECK(five.bounds_hold);

  CHECK_THROWS_AS(amplify(rp, 2), DomainError);
  CHECK_THROWS_AS(amplify(RandomizedPPProtocol::uniform(std::vector<GuessProtocol>(11, rp.support()[0].protocol)), 5),
                  GuardError);
}

TEST_CASE("amplify fixed points and random protocols") {
  Rng rng(8);
  BooleanMatrix f = gen::random_boolean(3, 3, rng);
  auto right = single(table_protocol(f));
  auto exact = RandomizedPPProtocol({{right, Rational(1)}});
  for (int t : {1, 3, 5}) CHECK(error(amplify(exact, t).protocol, f) == 0);

  BooleanMatrix inverse(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) inverse.set(i, j, !f(i, j));
  auto coin = RandomizedPPProtocol::uniform({right, single(table_protocol(inverse))});
  for (int t : {1, 3, 5}) CHECK(error(amplify(coin, t).protocol, f) == Rational(1, 2));

  for (int trial = 0; trial < 6; ++trial) {
    std::vector<GuessProtocol> members;
    for (int m = 0; m < 3; ++m) members.push_back(gen::random_guess({3, 3}, 3, 2, rng));
    auto rp = RandomizedPPProtocol::uniform(members);
    auto out = amplify(rp, 3);
    CHECK(error(out.protocol, f) == majority_error_oracle(rp, f, 3));
    Rational e = error(rp, f);
    if (e < ratio(1, 2)) {
      Rational eps = ratio(1, 2) - e;
      eps.canonicalize();
      CHECK(error(out.protocol, f).get_d() <= 1 - chernoff_bound(eps, 3) + 1e-12);
    }
  }
}

TEST_CASE("newman sparsification") {
  Rng rng(21);
  BooleanMatrix f = gen::random_boolean(4, 4, rng);
  auto rp = third_wrong(f);
  auto s = newman_sparsify(rp, f, Rational(1, 12), 64, 9);
  CHECK(s.protocol.support().size() == 64);
  for (const auto& e : s.protocol.support()) CHECK(e.probability == Rational(1, 64));
  CHECK(s.error <= Rational(5, 12));
  CHECK(s.error == error(s.protocol, f));
  CHECK(s.base_error == Rational(1, 3));
  CHECK(s.attempt_errors.size() == static_cast<std::size_t>(s.attempts));

  // Same seed, same draw.
  auto again = newman_sparsify(rp, f, Rational(1, 12), 64, 9);
  CHECK(again.attempts == s.attempts);
  CHECK(again.error == s.error);

  // Uniform on two members with t = 2: only a draw of both keeps the error.
  BooleanMatrix half = flipped(f, 0);
  auto pair = RandomizedPPProtocol::uniform({single(table_protocol(f)), single(table_protocol(half))});
  auto p = newman_sparsify(pair, f, Rational(1, 1000), 2, 4);
  CHECK(p.error == error(pair, f));
  CHECK(p.protocol.support().size() == 2);

  // Every cell error is a multiple of 1/64, never exactly 1/3.
  CHECK_THROWS_AS(newman_sparsify(rp, f, Rational(0), 64, 1, 10), InvariantError);
  CHECK_THROWS_AS(newman_sparsify(rp, f, Rational(-1), 4, 1), DomainError);
}

TEST_CASE("yao minimax examples") {
  Rng rng(2);
  BooleanMatrix f = gen::random_boolean(3, 3, rng);
  std::vector<GuessProtocol> fam{single(table_protocol(f)), gen::random_guess({3, 3}, 2, 2, rng)};
  auto r = yao_minimax_check(f, fam, Rational(0));
  CHECK(r.protocol_side == 0);
  CHECK(r.input_side == 0);
  CHECK(r.agree);
  CHECK(r.within_eps);

  BooleanMatrix halfones = BooleanMatrix::from_rows({{1, 0}, {0, 1}});
  std::vector<GuessProtocol> consts{GuessProtocol::constant({2, 2}, true), GuessProtocol::constant({2, 2}, false)};
  auto c = yao_minimax_check(halfones, consts, Rational(1, 3));
  CHECK(c.protocol_side == Rational(1, 2));
  CHECK(c.input_side == Rational(1, 2));
  CHECK_FALSE(c.within_eps);
  CHECK(c.family_strategy[0] == Rational(1, 2));

  CHECK_THROWS_AS(yao_minimax_check(halfones, {}, Rational(0)), DomainError);
  CHECK_THROWS_AS(yao_minimax_check(BooleanMatrix(3, 2), consts, Rational(0)), DomainError);
}

TEST_CASE("yao over enumerated 2x2 protocols") {
  auto trees = enumerate_protocols({2, 2}, 2);
  std::vector<GuessProtocol> fam;
  for (const auto& t : trees) fam.push_back(single(t));
  Rng rng(4);
  for (std::uint64_t code = 0; code < 16; ++code) {
    BooleanMatrix f = BooleanMatrix::from_code(2, 2, code);
    auto r = yao_minimax_check(f, fam, Rational(1, 3));
    CHECK(r.agree);
    CHECK(r.protocol_side == 0);  // depth 2 computes every 2x2 matrix
  }
  // Restricted subfamilies, checked against the column-generation distance game.
  for (int trial = 0; trial < 20; ++trial) {
    BooleanMatrix f = gen::random_boolean(2, 2, rng);
    std::vector<GuessProtocol> sub;
    std::set<std::uint64_t> codes;
    int size = static_cast<int>(rng.uniform_int(1, 6));
    for (int i = 0; i < size; ++i) {
      auto& g = fam[rng.uniform_int(0, static_cast<std::int64_t>(fam.size()) - 1)];
      sub.push_back(g);
      codes.insert(pp_eval_grid(g).code());
    }
    auto r = yao_minimax_check(f, sub, Rational(1, 4));
    CHECK(r.agree);
    auto game = measures::distance_game(f, std::vector<std::uint64_t>(codes.begin(), codes.end()));
    CHECK(r.protocol_side == game.value);
    Rational total = 0;
    for (const auto& q : r.family_strategy) total += q;
    CHECK(total == 1);
  }
}
