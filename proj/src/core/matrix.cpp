#include "ccl/core/matrix.hpp"

#include <string>

#include "ccl/core/error.hpp"

namespace ccl {

void check_side_guard(int rows, int cols, int max_side) {
  if (rows < 1 || cols < 1)
    throw DomainError("matrix needs at least one row and column, got " + std::to_string(rows) +
                      "x" + std::to_string(cols));
  if (rows > max_side || cols > max_side)
    throw GuardError("matrix " + std::to_string(rows) + "x" + std::to_string(cols) +
                     " exceeds the side guard " + std::to_string(max_side));
}

namespace {
void check_dims(int rows, int cols) {
  if (rows < 1 || cols < 1) throw DomainError("matrix dimensions must be positive");
}
}  // namespace

BooleanMatrix::BooleanMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
  check_dims(rows, cols);
  bits_.assign(static_cast<std::size_t>(rows) * cols, 0);
}

BooleanMatrix::BooleanMatrix(int rows, int cols, std::vector<std::uint8_t> bits)
    : rows_(rows), cols_(cols), bits_(std::move(bits)) {
  check_dims(rows, cols);
  if (bits_.size() != static_cast<std::size_t>(rows) * cols)
    throw DomainError("bit vector size does not match matrix shape");
  for (auto b : bits_)
    if (b > 1) throw DomainError("boolean matrix entry outside {0,1}");
}

BooleanMatrix BooleanMatrix::from_rows(std::initializer_list<std::initializer_list<int>> rows) {
  int r = static_cast<int>(rows.size());
  int c = r == 0 ? 0 : static_cast<int>(rows.begin()->size());
  std::vector<std::uint8_t> bits;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != c) throw DomainError("ragged initializer");
    for (int v : row) bits.push_back(static_cast<std::uint8_t>(v));
  }
  return BooleanMatrix(r, c, std::move(bits));
}

BooleanMatrix BooleanMatrix::from_code(int rows, int cols, std::uint64_t code) {
  BooleanMatrix m(rows, cols);
  if (m.cells() > 64) throw GuardError("matrix code limited to 64 cells");
  for (int k = 0; k < m.cells(); ++k) m.bits_[k] = static_cast<std::uint8_t>((code >> k) & 1U);
  return m;
}

std::uint64_t BooleanMatrix::code() const {
  if (cells() > 64) throw GuardError("matrix code limited to 64 cells");
  std::uint64_t c = 0;
  for (int k = 0; k < cells(); ++k) c |= static_cast<std::uint64_t>(bits_[k]) << k;
  return c;
}

int BooleanMatrix::count_ones() const {
  int n = 0;
  for (auto b : bits_) n += b;
  return n;
}

std::size_t BooleanMatrix::index(int i, int j) const {
  if (i < 0 || i >= rows_ || j < 0 || j >= cols_) throw DomainError("matrix index out of range");
  return static_cast<std::size_t>(i) * cols_ + j;
}

SignMatrix::SignMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
  check_dims(rows, cols);
  signs_.assign(static_cast<std::size_t>(rows) * cols, 1);
}

SignMatrix::SignMatrix(int rows, int cols, std::vector<std::int8_t> signs)
    : rows_(rows), cols_(cols), signs_(std::move(signs)) {
  check_dims(rows, cols);
  if (signs_.size() != static_cast<std::size_t>(rows) * cols)
    throw DomainError("sign vector size does not match matrix shape");
  for (auto s : signs_)
    if (s != 1 && s != -1) throw DomainError("sign matrix entry outside {+1,-1}");
}

SignMatrix SignMatrix::from_rows(std::initializer_list<std::initializer_list<int>> rows) {
  int r = static_cast<int>(rows.size());
  int c = r == 0 ? 0 : static_cast<int>(rows.begin()->size());
  std::vector<std::int8_t> signs;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != c) throw DomainError("ragged initializer");
    for (int v : row) signs.push_back(static_cast<std::int8_t>(v));
  }
  return SignMatrix(r, c, std::move(signs));
}

void SignMatrix::set(int i, int j, int v) {
  if (v != 1 && v != -1) throw DomainError("sign matrix entry outside {+1,-1}");
  signs_[index(i, j)] = static_cast<std::int8_t>(v);
}

SignMatrix SignMatrix::transpose() const {
  SignMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t.set(j, i, (*this)(i, j));
  return t;
}

SignMatrix SignMatrix::negate() const {
  std::vector<std::int8_t> s = signs_;
  for (auto& v : s) v = static_cast<std::int8_t>(-v);
  return SignMatrix(rows_, cols_, std::move(s));
}

std::size_t SignMatrix::index(int i, int j) const {
  if (i < 0 || i >= rows_ || j < 0 || j >= cols_) throw DomainError("matrix index out of range");
  return static_cast<std::size_t>(i) * cols_ + j;
}

SignMatrix to_sign(const BooleanMatrix& b) {
  std::vector<std::int8_t> s(b.bits().size());
  for (std::size_t k = 0; k < s.size(); ++k) s[k] = static_cast<std::int8_t>(1 - 2 * b.bits()[k]);
  return SignMatrix(b.rows(), b.cols(), std::move(s));
}

BooleanMatrix to_boolean(const SignMatrix& a) {
  std::vector<std::uint8_t> bits(a.signs().size());
  for (std::size_t k = 0; k < bits.size(); ++k) bits[k] = static_cast<std::uint8_t>((1 - a.signs()[k]) / 2);
  return BooleanMatrix(a.rows(), a.cols(), std::move(bits));
}

InputDistribution::InputDistribution(int rows, int cols, std::vector<Rational> weights)
    : rows_(rows), cols_(cols), weights_(std::move(weights)) {
  check_dims(rows, cols);
  if (weights_.size() != static_cast<std::size_t>(rows) * cols)
    throw DomainError("distribution size does not match shape");
  Rational total = 0;
  for (auto& w : weights_) {
    w.canonicalize();
    if (sgn(w) < 0) throw DomainError("negative probability weight " + to_string(w));
    total += w;
  }
  if (total != 1) throw DomainError("distribution weights sum to " + to_string(total) + ", not 1");
}

InputDistribution InputDistribution::uniform(int rows, int cols) {
  std::vector<Rational> w(static_cast<std::size_t>(rows) * cols, Rational(1, rows * cols));
  return InputDistribution(rows, cols, std::move(w));
}

InputDistribution InputDistribution::point_mass(int rows, int cols, int i, int j) {
  std::vector<Rational> w(static_cast<std::size_t>(rows) * cols, Rational(0));
  if (i < 0 || i >= rows || j < 0 || j >= cols) throw DomainError("point mass outside the matrix");
  w[static_cast<std::size_t>(i) * cols + j] = 1;
  return InputDistribution(rows, cols, std::move(w));
}

std::vector<Rectangle> enumerate_rectangles(int rows, int cols, int max_side) {
  check_side_guard(rows, cols, max_side);
  std::vector<Rectangle> out;
  out.reserve((std::size_t{1} << rows) << cols);
  for (std::uint32_t r = 0; r < (1U << rows); ++r)
    for (std::uint32_t c = 0; c < (1U << cols); ++c) out.push_back({r, c});
  return out;
}

}  // namespace ccl
