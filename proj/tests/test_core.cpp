#include <set>

#include "doctest.h"

#include "ccl/core/error.hpp"
#include "ccl/core/io.hpp"
#include "ccl/core/matrix.hpp"
#include "ccl/verify/generators.hpp"

using namespace ccl;

TEST_CASE("to_sign maps 0 to +1 and 1 to -1") {
  CHECK(to_sign(BooleanMatrix::from_rows({{0}})) == SignMatrix::from_rows({{1}}));
  CHECK(to_sign(BooleanMatrix::from_rows({{1}})) == SignMatrix::from_rows({{-1}}));
  CHECK(to_sign(BooleanMatrix::from_rows({{0, 1}, {1, 0}})) == SignMatrix::from_rows({{1, -1}, {-1, 1}}));
}

TEST_CASE("to_sign followed by to_boolean is the identity up to 8x8") {
  Rng rng(11);
  for (int rows = 1; rows <= 8; ++rows)
    for (int cols = 1; cols <= 8; ++cols)
      for (int rep = 0; rep < 5; ++rep) {
        auto b = gen::random_boolean(rows, cols, rng);
        auto a = to_sign(b);
        for (int i = 0; i < rows; ++i)
          for (int j = 0; j < cols; ++j) REQUIRE(a(i, j) == 1 - 2 * static_cast<int>(b(i, j)));
        CHECK(to_boolean(a) == b);
      }
}

TEST_CASE("parse_matrix examples") {
  auto m = io::parse_matrix("bool 1 1\n0\n");
  REQUIRE(std::holds_alternative<BooleanMatrix>(m));
  CHECK(std::get<BooleanMatrix>(m) == BooleanMatrix::from_rows({{0}}));

  auto s = io::parse_matrix("sign 2 2\n+-\n-+\n");
  REQUIRE(std::holds_alternative<SignMatrix>(s));
  CHECK(std::get<SignMatrix>(s) == SignMatrix::from_rows({{1, -1}, {-1, 1}}));

  try {
    io::parse_matrix("bool 2 3\n010\n11\n");
    FAIL("ragged row accepted");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).find("ragged") != std::string::npos);
  }
}

TEST_CASE("parse_matrix rejects bad input with line numbers") {
  auto line_of = [](const char* text) {
    try {
      io::parse_matrix(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return -1;
  };
  CHECK(line_of("boo 1 1\n0\n") == 1);
  CHECK(line_of("bool x 1\n0\n") == 1);
  CHECK(line_of("bool 1 2\n0+\n") == 2);
  CHECK(line_of("sign 2 1\n+\n") == 3);
  CHECK(line_of("sign 1 1\n+\n-\n") == 3);
  // final newline optional
  CHECK(io::parse_boolean_matrix("bool 1 2\n01") == BooleanMatrix::from_rows({{0, 1}}));
}

TEST_CASE("parse and serialize round-trip on canonical files") {
  Rng rng(5);
  for (int t = 0; t < 1000; ++t) {
    int rows = static_cast<int>(rng.uniform_int(1, 8)), cols = static_cast<int>(rng.uniform_int(1, 8));
    if (rng.coin()) {
      std::string text = io::serialize(gen::random_boolean(rows, cols, rng));
      REQUIRE(io::serialize(io::parse_boolean_matrix(text)) == text);
    } else {
      std::string text = io::serialize(gen::random_sign(rows, cols, rng));
      REQUIRE(io::serialize(io::parse_sign_matrix(text)) == text);
    }
  }
}

TEST_CASE("distributions are exact and must sum to one") {
  auto d = io::parse_distribution("dist 2 2\n1/4 1/4\n1/2 0\n");
  CHECK(d(1, 0) == Rational(1, 2));
  CHECK(io::serialize(d) == "dist 2 2\n1/4 1/4\n1/2 0\n");
  CHECK_THROWS_AS(io::parse_distribution("dist 1 2\n1/2 1/3\n"), ParseError);
  CHECK_THROWS_AS(io::parse_distribution("dist 1 2\n3/2 -1/2\n"), ParseError);
  CHECK_THROWS_AS(io::parse_distribution("dist 1 1\n1/0\n"), ParseError);
  CHECK_THROWS_AS(InputDistribution(1, 2, {Rational(1), Rational(1)}), DomainError);
}

TEST_CASE("enumerate_rectangles counts and distinctness") {
  CHECK(enumerate_rectangles(1, 1).size() == 4);
  CHECK(enumerate_rectangles(2, 2).size() == 16);
  CHECK(enumerate_rectangles(3, 2).size() == 32);
  for (int r = 1; r <= 5; ++r)
    for (int c = 1; c <= 5; ++c) {
      auto rects = enumerate_rectangles(r, c);
      std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
      for (auto& R : rects) seen.insert({R.row_mask, R.col_mask});
      CHECK(rects.size() == (std::size_t{1} << (r + c)));
      CHECK(seen.size() == rects.size());
    }
  CHECK_THROWS_AS(enumerate_rectangles(13, 1), GuardError);
}

TEST_CASE("read_file reports missing files") {
  CHECK_THROWS_WITH_AS(io::read_file("/nonexistent/x.sign"), doctest::Contains("file not found"), Error);
}
