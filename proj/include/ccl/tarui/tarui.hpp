#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "ccl/core/matrix.hpp"
#include "ccl/measures/measures.hpp"
#include "ccl/randomized/randomized.hpp"

// Integer combinations of rectangle indicators f(x) g(y), their shift to
// nonnegative counting form, and the randomized PP protocol assembled from
// a distribution over such combinations.
namespace ccl::tarui {

struct RectangleTerm {
  Int coefficient;
  std::vector<std::uint8_t> f;  // over Alice's inputs
  std::vector<std::uint8_t> g;  // over Bob's inputs
};

class RectangleTermPolynomial {
 public:
  // Throws DomainError on zero coefficients or mis-sized tables.
  RectangleTermPolynomial(Domain d, std::vector<RectangleTerm> terms);

  Domain domain() const noexcept { return domain_; }
  const std::vector<RectangleTerm>& terms() const noexcept { return terms_; }
  // sum |c|
  Int weight() const;

 private:
  Domain domain_;
  std::vector<RectangleTerm> terms_;
};

Int eval_phi(const RectangleTermPolynomial& phi, int x, int y);
std::vector<Int> eval_phi_grid(const RectangleTermPolynomial& phi);

/// `copies` unit terms f(x) g(y), or 1 - f(x) g(y) when complemented.
struct CountingTerm {
  std::vector<std::uint8_t> f;
  std::vector<std::uint8_t> g;
  bool complemented = false;
  Int copies;
};

struct CountingForm {
  Domain domain;
  std::vector<CountingTerm> terms;
};

std::vector<Int> eval_counting_grid(const CountingForm& psi);

struct Shift {
  CountingForm psi;
  Int g;  // sum of |negative coefficients|
};

// psi = phi + g pointwise: c > 0 gives c copies of the term, c < 0 gives
// |c| copies of its complement.
Shift shift_nonnegative(const RectangleTermPolynomial& phi);

/// One 2-bit protocol per unit term (Alice sends f(x), Bob answers g(y));
/// acc of the result equals psi everywhere. An empty psi yields a single
/// rejecting guess.
GuessProtocol counting_to_guess(const CountingForm& psi);

struct RandomizedRectanglePolynomial {
  struct Member {
    RectangleTermPolynomial phi;
    Rational probability;
  };
  std::vector<Member> support;
};

// Format documented in docs/formats.md.
RandomizedRectanglePolynomial parse_randomized_polynomial(std::string_view json_text);
nlohmann::json to_json(const RandomizedRectanglePolynomial& r);

struct MemberReport {
  Rational probability;
  Int threshold;        // g
  Int weight;           // sum |c|
  Int guesses;
  int pp_cost = 0;
  Int guess_bound;      // 2 sum |c|, at least 1
  int cost_bound = 0;   // ceil(log2 guess_bound) + 2
  bool counting_matches = false;   // acc = phi + g everywhere
  bool threshold_matches = false;  // accepts exactly where phi > 0
  measures::KlauckReport klauck;
  bool within_bounds() const;
};

struct Violation {
  int x = 0, y = 0;
  Rational probability;  // Pr[member disagrees with L]
};

struct PipelineReport {
  RandomizedPPProtocol protocol;
  std::vector<MemberReport> members;
  std::vector<Rational> error_grid;  // row-major
  Rational max_error;
  std::vector<Violation> violations;  // inputs with error > 1/3
  bool passed() const;
};

/// shift_nonnegative, counting_to_guess and threshold_to_pp(., g) per
/// member; same distribution. Every member is verified exhaustively.
PipelineReport pipeline(const RandomizedRectanglePolynomial& rphi, const BooleanMatrix& L);

nlohmann::json to_json(const PipelineReport& r);

}  // namespace ccl::tarui
