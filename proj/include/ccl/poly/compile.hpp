#pragma once

#include <vector>

#include "ccl/numeric/exact.hpp"
#include "ccl/poly/polynomial.hpp"
#include "ccl/protocols/guess.hpp"

namespace ccl {

/// Guess-count and cost bounds of the polynomial compilers, with the
/// parameters they were instantiated at.
struct LemmaBounds {
  Int M;      // coefficient bound
  Int l;      // max member guess count
  int d = 0;  // degree
  int k = 0;  // variable count
  int c = 0;  // max member cost
  Int guesses;
  int cost = 0;
  // false only for the zero polynomial, which has no degree
  bool applicable = true;
};

// M l^d (d+k)^(k+1) guesses and ceil(log M + d log l + (k+1) log(d+k)) + c d cost.
LemmaBounds lemma1_bounds(const Int& M, const Int& l, int d, int k, int c);
// (M l^d (2d+k)^(k+1))^2 guesses and 2 (ceil(log M + d log l + (k+1) log(2d+k)) + c d) cost.
LemmaBounds lemma2_bounds(const Int& M, const Int& l, int d, int k, int c);

struct CompileResult {
  GuessProtocol protocol;
  LemmaBounds bounds;

  bool guesses_within() const;
  bool cost_within() const;
};

/// gap of the result = p(gap_1, ..., gap_k) at every input. Each monomial
/// c z^a becomes |c| copies of the product of a_i copies of protocol i,
/// complemented when c < 0; the copies are concatenated.
/// Throws GuardError when the result would have more than `max_guesses` guesses.
CompileResult lemma1_compile(const std::vector<GuessProtocol>& protocols, const IntPolynomial& p,
                             const Int& max_guesses = kMaterializeLimit);

/// Lemma 1 applied to p q: sign(gap) = sign(p/q) wherever q(gaps) != 0.
CompileResult lemma2_compile(const std::vector<GuessProtocol>& protocols, const RationalFunction& r,
                             const Int& max_guesses = kMaterializeLimit);

struct MajorityResult {
  GuessProtocol protocol;
  int k = 0;
  int scale = 0;  // c: |gap_i| <= 2^c after normalization
  int degree_per_variable = 0;
  LemmaBounds bounds;  // Lemma 2 at r = T^(k)_c

  bool guesses_within() const;
  bool cost_within() const;
};

/// PP protocol accepting exactly where most of the k (odd) members accept.
/// Members are normalized first; T^(k)_c is compiled in its factored form
///   gap = prod_j D(g_j)^2 + sum_i 2 N(g_i) D(g_i) prod_{j != i} D(g_j)^2,
/// which is the p q of T's common-denominator expansion, so no guard on
/// the guess count applies.
MajorityResult majority_compile(const std::vector<GuessProtocol>& protocols);

// Univariate p(gap_g) without the guess-count guard.
GuessProtocol compile_univariate(const GuessProtocol& g, const IntPolynomial& p);

}  // namespace ccl
