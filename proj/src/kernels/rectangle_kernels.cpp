#include "ccl/kernels/rectangle_kernels.hpp"

#include "ccl/core/error.hpp"

namespace ccl::kernels {
namespace {

void check_shape(const std::vector<Int>& w, int rows, int cols) {
  check_side_guard(rows, cols);
  if (w.size() != static_cast<std::size_t>(rows) * cols) throw DomainError("weight grid does not match shape");
}

bool better(const RectangleMax& a, const RectangleMax& b) {
  if (a.value != b.value) return a.value > b.value;
  if (a.rect.row_mask != b.rect.row_mask) return a.rect.row_mask < b.rect.row_mask;
  return a.rect.col_mask < b.rect.col_mask;
}

RectangleMax best_for_rows(const std::vector<Int>& w, int cols, std::uint32_t row_mask, int rows,
                           std::vector<Int>& colsum) {
  for (int j = 0; j < cols; ++j) colsum[j] = 0;
  for (int i = 0; i < rows; ++i)
    if ((row_mask >> i) & 1U)
      for (int j = 0; j < cols; ++j) colsum[j] += w[static_cast<std::size_t>(i) * cols + j];
  Int pos = 0, neg = 0;
  std::uint32_t pos_mask = 0, neg_mask = 0;
  for (int j = 0; j < cols; ++j) {
    int s = sgn(colsum[j]);
    if (s > 0) {
      pos += colsum[j];
      pos_mask |= 1U << j;
    } else if (s < 0) {
      neg -= colsum[j];
      neg_mask |= 1U << j;
    }
  }
  if (neg > pos) return {neg, {row_mask, neg_mask}, -1};
  return {pos, {row_mask, pos_mask}, 1};
}

}  // namespace

RectangleMax max_abs_rectangle_sum(const std::vector<Int>& weights, int rows, int cols) {
  check_shape(weights, rows, cols);
  const long subsets = 1L << rows;
  RectangleMax best{Int(0), {0, 0}, 1};
#pragma omp parallel
  {
    RectangleMax local{Int(0), {0, 0}, 1};
    std::vector<Int> colsum(cols);
#pragma omp for schedule(static)
    for (long r = 0; r < subsets; ++r) {
      RectangleMax cand = best_for_rows(weights, cols, static_cast<std::uint32_t>(r), rows, colsum);
      if (better(cand, local)) local = cand;
    }
#pragma omp critical
    if (better(local, best)) best = local;
  }
  return best;
}

std::vector<RectangleMax> best_rectangle_per_row_set(const std::vector<Int>& weights, int rows, int cols) {
  check_shape(weights, rows, cols);
  const long subsets = 1L << rows;
  std::vector<RectangleMax> out(subsets);
#pragma omp parallel
  {
    std::vector<Int> colsum(cols);
#pragma omp for schedule(static)
    for (long r = 0; r < subsets; ++r) out[r] = best_for_rows(weights, cols, static_cast<std::uint32_t>(r), rows, colsum);
  }
  return out;
}

RectangleMax max_abs_rectangle_sum_serial(const std::vector<Int>& weights, int rows, int cols) {
  check_shape(weights, rows, cols);
  RectangleMax best{Int(0), {0, 0}, 1};
  for (const Rectangle& r : enumerate_rectangles(rows, cols)) {
    Int s = 0;
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j)
        if (r.contains(i, j)) s += weights[static_cast<std::size_t>(i) * cols + j];
    RectangleMax cand{abs(s), r, sgn(s) < 0 ? -1 : 1};
    if (cand.value > best.value) best = cand;
  }
  return best;
}

}  // namespace ccl::kernels
