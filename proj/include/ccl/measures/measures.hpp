#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "ccl/core/matrix.hpp"
#include "ccl/numeric/exact.hpp"
#include "ccl/protocols/guess.hpp"

namespace ccl::measures {

// max over rectangles R of |sum_{(i,j) in R} mu_ij A_ij|
Rational disc_mu(const SignMatrix& a, const InputDistribution& mu);
// Same value from the serial all-rectangles reference.
Rational disc_mu_enumerated(const SignMatrix& a, const InputDistribution& mu);

struct DiscResult {
  Rational value;
  InputDistribution mu;
  int rounds = 0;         // cutting-plane iterations
  std::size_t cuts = 0;   // rectangles in the final restricted LP
};

/// min_mu disc_mu(A, mu). Solved by cutting planes: an exact LP over a
/// growing rectangle set, with the rectangle oracle adding the most
/// violated rectangle until the LP value matches disc_mu at its optimum.
DiscResult disc(const SignMatrix& a);
// disc(J - 2B)
DiscResult disc_prime(const BooleanMatrix& b);

/// Vectors x_i, y_j with A_ij <x_i, y_j> >= 1 (up to 1e-9).
struct MarginRealization {
  std::vector<std::vector<double>> x;
  std::vector<std::vector<double>> y;
  double value = 0;  // max_i |x_i| * max_j |y_j|
};

struct McOptions {
  int restarts = 20;
  int iterations = 1500;
  std::uint64_t seed = 1;
};

struct McResult {
  double value = 0;  // certified upper bound on mc(A)
  MarginRealization realization;
  double min_margin = 0;  // min A_ij <x_i, y_j> of the realization
  bool optimizer_feasible = false;  // false: the trivial realization was kept
};

/// Margin complexity min max|x_i| max|y_j| over realizations, as a
/// certified upper bound: unit vectors in dimension rows + cols are moved
/// by softmin gradient ascent on the smallest margin, with restarts.
McResult mc(const SignMatrix& a, const McOptions& opts = {});
McResult mc_prime(const BooleanMatrix& b, const McOptions& opts = {});

// min_ij A_ij <x_i, y_j>
double min_margin(const SignMatrix& a, const MarginRealization& r);

struct SandwichReport {
  Rational disc;
  double mc = 0;
  double product = 0;
  bool lower_ok = false;  // mc * disc >= 1/8
  bool upper_ok = false;  // mc <= 8 / disc + 1e-6
  bool passed() const { return lower_ok && upper_ok; }
};

SandwichReport ls_sandwich_check(const SignMatrix& a, const McOptions& opts = {});

struct KlauckReport {
  Rational disc_prime;
  double log_inv_disc = 0;
  int pp_cost = 0;
  bool holds = false;  // 1 / disc' <= 2^pp_cost, decided exactly
};

/// Checks that g computes f in PP mode (DomainError otherwise), then
/// log2(1/disc'(f)) <= pp_cost(g).
KlauckReport klauck_consistency(const BooleanMatrix& f, const GuessProtocol& g);

/// A measure on Boolean matrices. +infinity marks "undefined".
struct MeasureFn {
  std::string name;
  std::function<double(const BooleanMatrix&)> apply;  // must be pure and thread-safe
};

MeasureFn entry_count();
MeasureFn log_inv_disc_prime();
MeasureFn mc_prime_measure(const McOptions& opts = {});
// Least pp_cost over members of `family` computing the matrix; infinity if none.
MeasureFn best_pp_cost(std::vector<GuessProtocol> family);

inline constexpr int kMaxBpCells = 16;

struct BpResult {
  double value = std::numeric_limits<double>::infinity();
  InputDistribution mu;
  BooleanMatrix f_tilde;
  Rational mu_distance;  // mu(f != f_tilde)
  int lp_solves = 0;
  std::size_t candidates = 0;  // matrices with finite Lambda
};

/// (BP_eps Lambda)(f) = max_mu min { Lambda(g) : mu(f != g) <= eps }.
/// Every candidate g is scored; the answer is the least Lambda value L for
/// which the game max_mu min_{Lambda(g) <= L} mu(f != g) has value <= eps.
BpResult bp_measure(const MeasureFn& lambda, const BooleanMatrix& f, const Rational& eps);

// max_mu min_{g in family} mu(f != g), with the optimal mu.
struct DistanceGame {
  Rational value;
  std::vector<Rational> mu;  // row-major over cells
  int rounds = 0;
};
DistanceGame distance_game(const BooleanMatrix& f, const std::vector<std::uint64_t>& family_codes);

}  // namespace ccl::measures
