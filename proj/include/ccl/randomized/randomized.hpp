#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ccl/core/matrix.hpp"
#include "ccl/numeric/exact.hpp"
#include "ccl/poly/compile.hpp"
#include "ccl/protocols/guess.hpp"

namespace ccl {

/// A finite distribution over guess protocols, each run in PP mode.
class RandomizedPPProtocol {
 public:
  struct Entry {
    GuessProtocol protocol;
    Rational probability;
  };

  // Probabilities must be >= 0 and sum to exactly 1; one shared domain.
  explicit RandomizedPPProtocol(std::vector<Entry> support);
  static RandomizedPPProtocol uniform(const std::vector<GuessProtocol>& members);

  Domain domain() const { return support_.front().protocol.domain(); }
  const std::vector<Entry>& support() const noexcept { return support_; }

 private:
  std::vector<Entry> support_;
};

// Pr[member disagrees with f] at every input, row-major.
std::vector<Rational> error_grid(const RandomizedPPProtocol& rp, const BooleanMatrix& f);
// max over inputs of the above.
Rational error(const RandomizedPPProtocol& rp, const BooleanMatrix& f);

// max pp_cost over members with positive probability
int bppp_cost(const RandomizedPPProtocol& rp);

// 1 - (1/2)(1 - 4 eps^2)^(t/2): success probability of a t-fold majority
// vote when each vote succeeds with probability 1/2 + eps.
double chernoff_bound(const Rational& eps, int t);
// Exact probability that more than t/2 of t independent trials succeed.
Rational majority_success(const Rational& p, int t);

inline constexpr long kMaxAmplifyTuples = 100'000;

struct AmplifyResult {
  RandomizedPPProtocol protocol;
  std::size_t tuples = 0;
  // Worst Lemma 2 bound over the compiled tuples, and whether every tuple met it.
  int cost_bound = 0;
  bool bounds_hold = true;
};

/// Support = every t-tuple of members with product probability, each tuple
/// replaced by the majority of its members (t odd).
AmplifyResult amplify(const RandomizedPPProtocol& rp, int t);

struct SparsifyResult {
  RandomizedPPProtocol protocol;
  Rational base_error;
  Rational error;
  int attempts = 0;
  std::vector<Rational> attempt_errors;
};

/// Draws `trials` members i.i.d. from rp (stream (seed, attempt)) and keeps
/// the uniform distribution on the draw if its exact error is within
/// `delta` of rp's; otherwise redraws. Throws InvariantError after
/// `max_attempts` draws, listing the measured errors.
SparsifyResult newman_sparsify(const RandomizedPPProtocol& rp, const BooleanMatrix& f, const Rational& delta,
                               int trials, std::uint64_t seed, int max_attempts = 64);

struct YaoReport {
  Rational protocol_side;  // min over distributions on the family of the worst-input error
  Rational input_side;     // max over input distributions of the best member's error
  std::vector<Rational> family_strategy;
  std::vector<Rational> input_strategy;  // row-major
  std::size_t distinct_columns = 0;
  bool agree = false;         // |protocol_side - input_side| <= 1e-9
  bool within_eps = false;    // protocol_side <= eps
};

/// Both sides of the error game between input distributions and
/// distributions over `family`, each solved as its own LP.
YaoReport yao_minimax_check(const BooleanMatrix& f, const std::vector<GuessProtocol>& family, const Rational& eps);

}  // namespace ccl
