#include "ccl/verify/fixtures.hpp"

#include "ccl/core/error.hpp"
#include "ccl/protocols/builders.hpp"

namespace ccl::fixtures {
namespace {

std::vector<std::uint8_t> indicator(std::initializer_list<int> on, int n = 4) {
  std::vector<std::uint8_t> v(n, 0);
  for (int i : on) v[i] = 1;
  return v;
}

tarui::RandomizedRectanglePolynomial single(std::vector<tarui::RectangleTerm> terms) {
  return {{{tarui::RectangleTermPolynomial({4, 4}, std::move(terms)), Rational(1)}}};
}

}  // namespace

RandomizedPPProtocol one_third_error(const BooleanMatrix& f) {
  std::vector<GuessProtocol> members;
  for (int r = 0; r < 3; ++r) {
    BooleanMatrix g = f;
    for (int i = 0; i < f.rows(); ++i)
      for (int j = 0; j < f.cols(); ++j)
        if ((i * f.cols() + j) % 3 == r) g.set(i, j, !f(i, j));
    members.push_back(GuessProtocol({table_protocol(g)}));
  }
  return RandomizedPPProtocol::uniform(members);
}

std::vector<std::string> pipeline_fixture_names() { return {"and", "boundary", "or2"}; }

PipelineFixture pipeline_fixture(const std::string& name) {
  if (name == "or2") {
    auto a1 = indicator({0, 1}), b1 = indicator({0, 1}), a2 = indicator({1, 2}), b2 = indicator({1, 3});
    BooleanMatrix L(4, 4);
    for (int x = 0; x < 4; ++x)
      for (int y = 0; y < 4; ++y) L.set(x, y, (a1[x] && b1[y]) || (a2[x] && b2[y]));
    return {name,
            single({{Int(1), a1, b1}, {Int(1), a2, b2}, {Int(-1), indicator({1}), indicator({1})}}),
            L};
  }
  if (name == "and") {
    BooleanMatrix L(4, 4);
    L.set(3, 3, true);
    return {name, single({{Int(1), indicator({3}), indicator({3})}}), L};
  }
  if (name == "boundary") {
    BooleanMatrix L(4, 4);
    for (int x = 0; x < 4; ++x)
      for (int y = 0; y < 4; ++y) L.set(x, y, x >= y);
    tarui::RandomizedRectanglePolynomial r;
    for (int i = 0; i < 3; ++i) {
      std::vector<tarui::RectangleTerm> terms{{Int(-1), indicator({0, 1, 2, 3}), indicator({0, 1, 2, 3})}};
      for (int x = 0; x < 4; ++x) {
        std::vector<std::uint8_t> row(4);
        bool any = false;
        for (int y = 0; y < 4; ++y) {
          row[y] = (x == i) != L(x, y) ? 1 : 0;
          any = any || row[y];
        }
        if (any) terms.push_back({Int(2), indicator({x}), row});
      }
      r.support.push_back({tarui::RectangleTermPolynomial({4, 4}, terms), ratio(1, 3)});
    }
    return {name, r, L};
  }
  throw DomainError("unknown pipeline fixture '" + name + "'");
}

}  // namespace ccl::fixtures
