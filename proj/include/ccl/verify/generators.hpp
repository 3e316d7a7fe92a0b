#pragma once

#include "ccl/core/matrix.hpp"
#include "ccl/numeric/random.hpp"
#include "ccl/poly/polynomial.hpp"
#include "ccl/protocols/guess.hpp"

// Seeded random instances for property suites.
namespace ccl::gen {

// Internal nodes are chosen with probability 2/3 until `max_depth` is used up.
DeterministicProtocol random_protocol(Domain d, int max_depth, Rng& rng);
// 1..max_guesses members.
GuessProtocol random_guess(Domain d, int max_guesses, int max_depth, Rng& rng);

// Nonzero polynomial of total degree exactly `degree` in k variables,
// coefficients in [-max_coeff, max_coeff].
IntPolynomial random_polynomial(int k, int degree, int max_coeff, Rng& rng);

BooleanMatrix random_boolean(int rows, int cols, Rng& rng);
SignMatrix random_sign(int rows, int cols, Rng& rng);

}  // namespace ccl::gen
