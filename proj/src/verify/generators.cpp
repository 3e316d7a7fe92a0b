#include "ccl/verify/generators.hpp"

#include "ccl/core/error.hpp"

namespace ccl::gen {

DeterministicProtocol random_protocol(Domain d, int max_depth, Rng& rng) {
  if (max_depth == 0 || rng.uniform_int(0, 2) == 0) return DeterministicProtocol::leaf(d, rng.coin());
  Speaker who = rng.coin() ? Speaker::Alice : Speaker::Bob;
  int side = who == Speaker::Alice ? d.x_size : d.y_size;
  std::vector<std::uint8_t> table(side);
  for (auto& b : table) b = rng.coin() ? 1 : 0;
  auto zero = random_protocol(d, max_depth - 1, rng);
  auto one = random_protocol(d, max_depth - 1, rng);
  return DeterministicProtocol::speak(d, who, std::move(table), zero, one);
}

GuessProtocol random_guess(Domain d, int max_guesses, int max_depth, Rng& rng) {
  int l = static_cast<int>(rng.uniform_int(1, max_guesses));
  std::vector<DeterministicProtocol> members;
  for (int i = 0; i < l; ++i) members.push_back(random_protocol(d, max_depth, rng));
  return GuessProtocol(std::move(members));
}

IntPolynomial random_polynomial(int k, int degree, int max_coeff, Rng& rng) {
  if (degree < 0 || max_coeff < 1) throw DomainError("random polynomial needs degree >= 0 and max_coeff >= 1");
  auto coeff = [&] {
    Int c = rng.uniform_int(1, max_coeff);
    return rng.coin() ? c : Int(-c);
  };
  auto random_exponent = [&](int total) {
    Exponent e(k, 0);
    for (int s = 0; s < total; ++s) ++e[rng.uniform_int(0, k - 1)];
    return e;
  };
  IntPolynomial p(k);
  // One term pins the degree; the rest are optional.
  p.add_term(random_exponent(degree), coeff());
  int extra = static_cast<int>(rng.uniform_int(0, 3));
  for (int i = 0; i < extra; ++i) {
    Exponent e = random_exponent(static_cast<int>(rng.uniform_int(0, degree)));
    if (sgn(p.coefficient(e)) == 0) p.add_term(e, coeff());
  }
  return p;
}

BooleanMatrix random_boolean(int rows, int cols, Rng& rng) {
  BooleanMatrix b(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) b.set(i, j, rng.coin());
  return b;
}

SignMatrix random_sign(int rows, int cols, Rng& rng) {
  SignMatrix a(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) a.set(i, j, rng.coin() ? 1 : -1);
  return a;
}

}  // namespace ccl::gen
