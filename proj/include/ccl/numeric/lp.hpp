#pragma once

#include <vector>

#include "ccl/numeric/exact.hpp"

// Exact-rational simplex for finite two-player zero-sum games.
//
// Everything here is solved in mpq arithmetic, so the game values come out
// exact and ties are decided exactly. Pivoting uses the largest reduced cost
// and switches to Bland's rule on degenerate runs, so it cannot cycle.
namespace ccl::lp {

using RationalMatrix = std::vector<std::vector<Rational>>;

/// Solution of `max 1.y  s.t.  A y <= 1, y >= 0` for entrywise positive A,
/// together with the optimal covering dual `min 1.x  s.t.  A^T x >= 1`.
struct PackingResult {
  std::vector<Rational> primal;  // y, one per column of A
  std::vector<Rational> dual;    // x, one per row of A
  Rational objective;
  long pivots = 0;
};

PackingResult solve_packing(const RationalMatrix& a);

/// A solved matrix game. The row player maximizes payoff[i][j], the column
/// player minimizes it; `value` is the minimax value.
struct GameSolution {
  Rational value;
  std::vector<Rational> row_strategy;
  std::vector<Rational> col_strategy;
  long pivots = 0;
};

/// Solves the game with one LP, reading the second strategy off the dual.
/// The LP is oriented so that the smaller side of the matrix becomes the
/// constraint set.
GameSolution solve_game(const RationalMatrix& payoff);

/// Two independent LPs for the same game: the column player's program on the
/// payoff matrix and the row player's program on its negated transpose.
/// Strong duality says the two values coincide.
struct TwoSidedSolution {
  GameSolution column_side;  // value = min_q max_i (Aq)_i
  GameSolution row_side;     // value = max_p min_j (p^T A)_j
};

TwoSidedSolution solve_game_two_sided(const RationalMatrix& payoff);

}  // namespace ccl::lp
