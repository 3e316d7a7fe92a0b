#include "doctest.h"

#include "ccl/core/error.hpp"
#include "ccl/core/io.hpp"
#include "ccl/tarui/tarui.hpp"
#include "ccl/verify/generators.hpp"

using namespace ccl;
using namespace ccl::tarui;

namespace {

const std::string data = CCL_TEST_DATA;

std::vector<std::uint8_t> random_bits(int n, Rng& rng) {
  std::vector<std::uint8_t> b(n);
  for (auto& v : b) v = rng.coin() ? 1 : 0;
  return b;
}

RectangleTermPolynomial random_phi(Domain d, Rng& rng) {
  std::vector<RectangleTerm> terms;
  int n = static_cast<int>(rng.uniform_int(0, 6));
  for (int i = 0; i < n; ++i) {
    long c = 0;
    while (c == 0) c = static_cast<long>(rng.uniform_int(-4, 4));
    terms.push_back({Int(c), random_bits(d.x_size, rng), random_bits(d.y_size, rng)});
  }
  return RectangleTermPolynomial(d, terms);
}

RandomizedRectanglePolynomial load(const std::string& name) {
  return parse_randomized_polynomial(io::read_file(data + "/" + name + ".json"));
}

BooleanMatrix load_matrix(const std::string& name) {
  return io::parse_boolean_matrix(io::read_file(data + "/" + name + ".bool"));
}

}  // namespace

TEST_CASE("eval_phi examples") {
  Domain d{4, 4};
  RectangleTermPolynomial empty(d, {});
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) CHECK(eval_phi(empty, x, y) == 0);

  RectangleTermPolynomial two(d, {{Int(2), {1, 1, 1, 1}, {1, 1, 1, 1}}});
  for (const auto& v : eval_phi_grid(two)) CHECK(v == 2);

  RectangleTermPolynomial mixed(d, {{Int(2), {1, 0, 0, 0}, {1, 0, 0, 0}}, {Int(-3), {0, 1, 0, 0}, {1, 1, 1, 1}}});
  CHECK(eval_phi(mixed, 0, 0) == 2);
  CHECK(eval_phi(mixed, 1, 2) == -3);
  CHECK_THROWS_AS(eval_phi(mixed, 4, 0), DomainError);
  CHECK_THROWS_AS(RectangleTermPolynomial(d, {{Int(0), {1, 1, 1, 1}, {1, 1, 1, 1}}}), DomainError);
  CHECK_THROWS_AS(RectangleTermPolynomial(d, {{Int(1), {1, 1, 1}, {1, 1, 1, 1}}}), DomainError);
}

TEST_CASE("shift_nonnegative examples") {
  Domain d{4, 4};
  RectangleTermPolynomial pos(d, {{Int(2), {1, 1, 0, 0}, {0, 1, 1, 0}}, {Int(1), {0, 0, 1, 1}, {1, 1, 1, 1}}});
  Shift s = shift_nonnegative(pos);
  CHECK(s.g == 0);
  CHECK(eval_counting_grid(s.psi) == eval_phi_grid(pos));

  RectangleTermPolynomial mixed(d, {{Int(2), {1, 0, 0, 0}, {1, 0, 0, 0}}, {Int(-3), {0, 1, 0, 0}, {1, 1, 1, 1}}});
  Shift m = shift_nonnegative(mixed);
  CHECK(m.g == 3);
  CHECK(eval_counting_grid(m.psi)[0] == 5);
}

TEST_CASE("shift and counting properties on random phi") {
  Rng rng(17);
  for (int trial = 0; trial < 1000; ++trial) {
    Domain d{static_cast<int>(rng.uniform_int(1, 4)), static_cast<int>(rng.uniform_int(1, 4))};
    auto phi = random_phi(d, rng);
    Shift s = shift_nonnegative(phi);
    auto phi_grid = eval_phi_grid(phi);
    auto psi_grid = eval_counting_grid(s.psi);
    Int g = 0;
    for (const auto& t : phi.terms())
      if (sgn(t.coefficient) < 0) g -= t.coefficient;
    CHECK(s.g == g);
    for (std::size_t i = 0; i < phi_grid.size(); ++i) {
      CHECK(psi_grid[i] == phi_grid[i] + g);
      CHECK(sgn(psi_grid[i]) >= 0);
    }
    if (trial % 10 == 0) {
      GuessProtocol c = counting_to_guess(s.psi);
      CHECK(c.accept_grid() == psi_grid);
      CHECK(c.member_cost() <= 2);
      // Member by member on the explicit list.
      CHECK(gap_profile_enumerated(c).acc == psi_grid);
    }
  }
}

TEST_CASE("counting_to_guess examples") {
  Domain d{4, 4};
  CountingForm one{d, {{{1, 1, 1, 1}, {1, 1, 1, 1}, false, Int(1)}}};
  auto g = counting_to_guess(one);
  for (const auto& a : g.accept_grid()) CHECK(a == 1);
  CHECK(g.guess_count() == 1);

  CountingForm comp{d, {{{0, 0, 0, 0}, {1, 1, 1, 1}, true, Int(1)}}};
  for (const auto& a : counting_to_guess(comp).accept_grid()) CHECK(a == 1);

  CountingForm none{d, {}};
  for (const auto& a : counting_to_guess(none).accept_grid()) CHECK(a == 0);
}

TEST_CASE("pipeline on the OR fixture") {
  auto r = pipeline(load("or2_4x4"), load_matrix("or2_4x4"));
  CHECK(r.max_error == 0);
  CHECK(r.passed());
  BooleanMatrix L = load_matrix("or2_4x4");
  CHECK(pp_eval_grid(r.protocol.support()[0].protocol) == L);
  CHECK(r.members[0].threshold == 1);
  CHECK(r.members[0].weight == 3);
  CHECK(r.members[0].klauck.holds);
}

TEST_CASE("pipeline on the AND fixture") {
  auto r = pipeline(load("and_4x4"), load_matrix("and_4x4"));
  CHECK(r.max_error == 0);
  CHECK(r.passed());
  CHECK(r.members[0].threshold == 0);
}

TEST_CASE("pipeline at the one-third boundary") {
  auto r = pipeline(load("boundary_4x4"), load_matrix("boundary_4x4"));
  CHECK(r.max_error == Rational(1, 3));
  CHECK(r.violations.empty());
  CHECK(r.passed());
  int at_third = 0;
  for (const auto& e : r.error_grid) at_third += e == Rational(1, 3) ? 1 : 0;
  CHECK(at_third == 12);
  for (const auto& m : r.members) {
    CHECK(m.threshold_matches);
    CHECK(m.counting_matches);
    CHECK(m.within_bounds());
    CHECK(m.klauck.holds);
  }
}

TEST_CASE("pipeline reports inputs above one third") {
  auto rphi = load("boundary_4x4");
  // Collapse onto the first member: its flipped row is now always wrong.
  rphi.support[0].probability = 1;
  rphi.support[1].probability = 0;
  rphi.support[2].probability = 0;
  auto r = pipeline(rphi, load_matrix("boundary_4x4"));
  CHECK(r.max_error == 1);
  CHECK(r.violations.size() == 4);
  CHECK(r.violations[0].x == 0);
  CHECK_FALSE(r.passed());
  CHECK_THROWS_AS(pipeline(rphi, BooleanMatrix(3, 4)), DomainError);
}

TEST_CASE("pipeline input parsing") {
  auto r = load("boundary_4x4");
  auto again = parse_randomized_polynomial(to_json(r).dump());
  CHECK(to_json(again) == to_json(r));
  CHECK_THROWS_AS(parse_randomized_polynomial("{"), ParseError);
  CHECK_THROWS_AS(parse_randomized_polynomial(R"({"domain":[2,2],"support":[]})"), ParseError);
  CHECK_THROWS_AS(parse_randomized_polynomial(
                      R"({"domain":[2,2],"support":[{"probability":"1/2","terms":[]}]})"),
                  ParseError);
  CHECK_THROWS_AS(parse_randomized_polynomial(
                      R"({"domain":[2,2],"support":[{"probability":1,"terms":[{"coefficient":1,"f":"101","g":"11"}]}]})"),
                  ParseError);
  CHECK_THROWS_AS(parse_randomized_polynomial(
                      R"({"domain":[2,2],"support":[{"probability":1,"terms":[{"coefficient":0,"f":"10","g":"11"}]}]})"),
                  ParseError);
  CHECK_THROWS_AS(parse_randomized_polynomial(
                      R"({"domain":[2,2],"support":[{"probability":1,"terms":[{"coefficient":"1/2","f":"10","g":"11"}]}]})"),
                  ParseError);
}
