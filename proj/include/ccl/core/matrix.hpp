#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

#include "ccl/numeric/exact.hpp"

namespace ccl {

// Exhaustive oracles assume at most this many rows/columns.
inline constexpr int kDefaultMaxSide = 12;

void check_side_guard(int rows, int cols, int max_side = kDefaultMaxSide);

/// A 0/1 communication matrix, rows indexed by Alice's input x and columns by
/// Bob's input y.
class BooleanMatrix {
 public:
  BooleanMatrix(int rows, int cols);
  BooleanMatrix(int rows, int cols, std::vector<std::uint8_t> bits);
  static BooleanMatrix from_rows(std::initializer_list<std::initializer_list<int>> rows);
  // Row-major bit i of `code` is entry (i / cols, i % cols).
  static BooleanMatrix from_code(int rows, int cols, std::uint64_t code);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  int cells() const noexcept { return rows_ * cols_; }
  bool operator()(int i, int j) const { return bits_[index(i, j)] != 0; }
  void set(int i, int j, bool v) { bits_[index(i, j)] = v ? 1 : 0; }
  std::uint64_t code() const;
  int count_ones() const;
  const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }

  bool operator==(const BooleanMatrix&) const = default;

 private:
  std::size_t index(int i, int j) const;
  int rows_, cols_;
  std::vector<std::uint8_t> bits_;
};

/// A +1/-1 matrix.
class SignMatrix {
 public:
  SignMatrix(int rows, int cols);  // all +1
  SignMatrix(int rows, int cols, std::vector<std::int8_t> signs);
  static SignMatrix from_rows(std::initializer_list<std::initializer_list<int>> rows);
  static SignMatrix ones(int rows, int cols) { return SignMatrix(rows, cols); }

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  int operator()(int i, int j) const { return signs_[index(i, j)]; }
  void set(int i, int j, int v);
  const std::vector<std::int8_t>& signs() const noexcept { return signs_; }

  SignMatrix transpose() const;
  SignMatrix negate() const;

  bool operator==(const SignMatrix&) const = default;

 private:
  std::size_t index(int i, int j) const;
  int rows_, cols_;
  std::vector<std::int8_t> signs_;
};

// J - 2B, entrywise 1 - 2b.
SignMatrix to_sign(const BooleanMatrix& b);
// Inverse map b = (1 - a) / 2.
BooleanMatrix to_boolean(const SignMatrix& a);

/// Probability weights on matrix entries, exact and summing to one.
class InputDistribution {
 public:
  InputDistribution(int rows, int cols, std::vector<Rational> weights);
  static InputDistribution uniform(int rows, int cols);
  static InputDistribution point_mass(int rows, int cols, int i, int j);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  const Rational& operator()(int i, int j) const { return weights_[i * cols_ + j]; }
  const std::vector<Rational>& weights() const noexcept { return weights_; }

 private:
  int rows_, cols_;
  std::vector<Rational> weights_;
};

/// Row subset x column subset, as bit masks (bit i = index i).
struct Rectangle {
  std::uint32_t row_mask = 0;
  std::uint32_t col_mask = 0;

  bool contains(int i, int j) const {
    return ((row_mask >> i) & 1U) != 0 && ((col_mask >> j) & 1U) != 0;
  }
  bool empty() const { return row_mask == 0 || col_mask == 0; }
  bool operator==(const Rectangle&) const = default;
};

// All 2^rows * 2^cols rectangles, row mask major, including the empty ones.
std::vector<Rectangle> enumerate_rectangles(int rows, int cols, int max_side = kDefaultMaxSide);

}  // namespace ccl
