#include "ccl/numeric/lp.hpp"

#include <algorithm>

#include "ccl/core/error.hpp"

namespace ccl::lp {
namespace {

constexpr long kPivotCap = 2'000'000;
constexpr int kDegenerateRun = 8;

// Validates the shape and returns a copy with every entry canonical.
RationalMatrix checked(const RationalMatrix& a) {
  if (a.empty() || a.front().empty()) throw DomainError("empty LP matrix");
  for (const auto& row : a)
    if (row.size() != a.front().size()) throw DomainError("ragged LP matrix");
  RationalMatrix c = a;
  for (auto& row : c)
    for (auto& v : row) v.canonicalize();
  return c;
}

// Dense tableau: m constraint rows over n structural + m slack columns, rhs last.
class Tableau {
 public:
  explicit Tableau(const RationalMatrix& a)
      : m_(a.size()), n_(a.front().size()), width_(n_ + m_ + 1), cells_((m_ + 1) * width_) {
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) at(i, j) = a[i][j];
      at(i, n_ + i) = 1;
      at(i, width_ - 1) = 1;
    }
    for (std::size_t j = 0; j < n_; ++j) at(m_, j) = -1;
    basis_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) basis_[i] = n_ + i;
  }

  long run() {
    long pivots = 0;
    int degenerate = 0;
    for (;;) {
      // Dantzig's rule; after a run of degenerate pivots Bland's rule takes
      // over (lowest index with negative reduced cost), which cannot cycle.
      const bool bland = degenerate >= kDegenerateRun;
      std::size_t enter = width_;
      for (std::size_t j = 0; j + 1 < width_; ++j) {
        if (sgn(at(m_, j)) >= 0) continue;
        if (enter == width_ || (!bland && at(m_, j) < at(m_, enter))) enter = j;
        if (bland) break;
      }
      if (enter == width_) return pivots;

      std::size_t leave = m_;
      Rational best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (sgn(at(i, enter)) <= 0) continue;
        Rational ratio = at(i, width_ - 1) / at(i, enter);
        if (leave == m_ || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == m_) throw Error("packing LP unbounded (matrix not positive?)");
      degenerate = sgn(best) == 0 ? degenerate + 1 : 0;
      pivot(leave, enter);
      if (++pivots > kPivotCap) throw Error("simplex pivot cap exceeded");
    }
  }

  PackingResult result(long pivots) const {
    PackingResult r;
    r.primal.assign(n_, Rational(0));
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] < n_) r.primal[basis_[i]] = at(i, width_ - 1);
    r.dual.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) r.dual[i] = at(m_, n_ + i);
    r.objective = at(m_, width_ - 1);
    r.pivots = pivots;
    return r;
  }

 private:
  Rational& at(std::size_t i, std::size_t j) { return cells_[i * width_ + j]; }
  const Rational& at(std::size_t i, std::size_t j) const { return cells_[i * width_ + j]; }

  void pivot(std::size_t row, std::size_t col) {
    Rational inv = 1 / at(row, col);
    std::vector<std::size_t> nonzero;
    for (std::size_t j = 0; j < width_; ++j) {
      if (sgn(at(row, j)) != 0) {
        at(row, j) *= inv;
        nonzero.push_back(j);
      }
    }
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == row) continue;
      Rational factor = at(i, col);
      if (sgn(factor) == 0) continue;
      for (std::size_t j : nonzero) at(i, j) -= factor * at(row, j);
    }
    basis_[row] = col;
  }

  std::size_t m_, n_, width_;
  std::vector<Rational> cells_;
  std::vector<std::size_t> basis_;
};

Rational shift_for(const RationalMatrix& a) {
  Rational lo = a[0][0];
  for (const auto& row : a)
    for (const auto& v : row) lo = std::min(lo, v);
  return Rational(1) - lo;
}

// Column player's program: min_q max_i (Aq)_i.
GameSolution solve_column_side(const RationalMatrix& payoff) {
  Rational shift = shift_for(payoff);
  RationalMatrix shifted = payoff;
  for (auto& row : shifted)
    for (auto& v : row) v += shift;
  PackingResult packing = solve_packing(shifted);
  GameSolution g;
  Rational shifted_value = 1 / packing.objective;
  g.value = shifted_value - shift;
  g.col_strategy.reserve(packing.primal.size());
  for (const auto& y : packing.primal) g.col_strategy.push_back(y * shifted_value);
  g.row_strategy.reserve(packing.dual.size());
  for (const auto& x : packing.dual) g.row_strategy.push_back(x * shifted_value);
  g.pivots = packing.pivots;
  return g;
}

RationalMatrix negated_transpose(const RationalMatrix& a) {
  RationalMatrix t(a.front().size(), std::vector<Rational>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = -a[i][j];
  return t;
}

// Row player's program, posed as the column player's program of -A^T.
GameSolution solve_row_side(const RationalMatrix& payoff) {
  GameSolution flipped = solve_column_side(negated_transpose(payoff));
  GameSolution g;
  g.value = -flipped.value;
  g.row_strategy = std::move(flipped.col_strategy);
  g.col_strategy = std::move(flipped.row_strategy);
  g.pivots = flipped.pivots;
  return g;
}

}  // namespace

PackingResult solve_packing(const RationalMatrix& input) {
  RationalMatrix a = checked(input);
  for (const auto& row : a)
    for (const auto& v : row)
      if (sgn(v) <= 0) throw DomainError("packing LP needs a positive matrix");
  Tableau t(a);
  long pivots = t.run();
  return t.result(pivots);
}

GameSolution solve_game(const RationalMatrix& input) {
  RationalMatrix payoff = checked(input);
  if (payoff.size() <= payoff.front().size()) return solve_column_side(payoff);
  return solve_row_side(payoff);
}

TwoSidedSolution solve_game_two_sided(const RationalMatrix& input) {
  RationalMatrix payoff = checked(input);
  return {solve_column_side(payoff), solve_row_side(payoff)};
}

}  // namespace ccl::lp
