#include "doctest.h"

#include "ccl/core/error.hpp"
#include "ccl/numeric/exact.hpp"
#include "ccl/numeric/lp.hpp"
#include "ccl/numeric/random.hpp"

using namespace ccl;
using lp::RationalMatrix;

namespace {

RationalMatrix ints(std::initializer_list<std::initializer_list<long>> rows) {
  RationalMatrix m;
  for (auto& r : rows) {
    m.emplace_back();
    for (long v : r) m.back().push_back(Rational(v));
  }
  return m;
}

// Best response values: how well each side does against the other's strategy.
void check_optimal(const RationalMatrix& a, const lp::GameSolution& s) {
  const std::size_t rows = a.size(), cols = a[0].size();
  Rational sp = 0, sq = 0;
  for (auto& p : s.row_strategy) {
    CHECK(p >= 0);
    sp += p;
  }
  for (auto& q : s.col_strategy) {
    CHECK(q >= 0);
    sq += q;
  }
  CHECK(sp == 1);
  CHECK(sq == 1);
  for (std::size_t j = 0; j < cols; ++j) {
    Rational v = 0;
    for (std::size_t i = 0; i < rows; ++i) v += s.row_strategy[i] * a[i][j];
    CHECK(v >= s.value);
  }
  for (std::size_t i = 0; i < rows; ++i) {
    Rational v = 0;
    for (std::size_t j = 0; j < cols; ++j) v += s.col_strategy[j] * a[i][j];
    CHECK(v <= s.value);
  }
}

}  // namespace

TEST_CASE("ceil_log2") {
  CHECK(ceil_log2(Int(1)) == 0);
  CHECK(ceil_log2(Int(2)) == 1);
  CHECK(ceil_log2(Int(3)) == 2);
  CHECK(ceil_log2(Int(4)) == 2);
  CHECK(ceil_log2(Int(5)) == 3);
  CHECK(ceil_log2(std::uint64_t{1} << 40) == 40);
  CHECK(ceil_log2((Int(1) << 300) + 1) == 301);
}

TEST_CASE("parse_rational") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("-2") == Rational(-2));
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("x"), ParseError);
  CHECK_THROWS_AS(parse_rational(""), ParseError);
}

TEST_CASE("rng streams are reproducible and index-separated") {
  Rng a(7, 3), b(7, 3), c(7, 4);
  bool differ = false;
  for (int i = 0; i < 10; ++i) {
    auto x = a.next();
    CHECK(x == b.next());
    differ |= x != c.next();
  }
  CHECK(differ);
  Rng r(1);
  for (int i = 0; i < 1000; ++i) {
    auto v = r.uniform_int(-3, 5);
    CHECK(v >= -3);
    CHECK(v <= 5);
    double u = r.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("matching pennies and rock-paper-scissors") {
  auto mp = ints({{1, -1}, {-1, 1}});
  auto s = lp::solve_game(mp);
  CHECK(s.value == 0);
  CHECK(s.row_strategy[0] == Rational(1, 2));
  check_optimal(mp, s);

  auto rps = ints({{0, -1, 1}, {1, 0, -1}, {-1, 1, 0}});
  auto r = lp::solve_game(rps);
  CHECK(r.value == 0);
  for (auto& p : r.row_strategy) CHECK(p == Rational(1, 3));
  check_optimal(rps, r);
}

TEST_CASE("saddle point and rectangular games") {
  auto a = ints({{3, 1, 4}, {1, 5, 9}});
  auto s = lp::solve_game(a);
  check_optimal(a, s);
  // 2x2 hand solution of columns {1,2}: p = 2/3, value 7/3... verify by mixing formula
  auto t = lp::solve_game_two_sided(a);
  CHECK(t.column_side.value == t.row_side.value);
  CHECK(t.column_side.value == s.value);

  auto tall = ints({{2, 0}, {0, 2}, {1, 1}, {-5, 7}});
  auto u = lp::solve_game(tall);
  check_optimal(tall, u);
  auto v = lp::solve_game_two_sided(tall);
  CHECK(v.column_side.value == u.value);
  CHECK(v.row_side.value == u.value);
}

TEST_CASE("random games: strategies certify the value") {
  Rng rng(3);
  for (int t = 0; t < 60; ++t) {
    int rows = static_cast<int>(rng.uniform_int(1, 6)), cols = static_cast<int>(rng.uniform_int(1, 6));
    RationalMatrix a(rows, std::vector<Rational>(cols));
    for (auto& r : a)
      for (auto& v : r) v = Rational(rng.uniform_int(-4, 4), rng.uniform_int(1, 3));
    auto s = lp::solve_game(a);
    check_optimal(a, s);
    auto two = lp::solve_game_two_sided(a);
    CHECK(two.column_side.value == s.value);
    CHECK(two.row_side.value == s.value);
  }
}
