#pragma once

#include <vector>

#include "ccl/core/matrix.hpp"
#include "ccl/numeric/exact.hpp"

namespace ccl::kernels {

/// Largest |sum over R of w| among all rectangles R, with a maximizer.
/// `sign` is +1 when the maximizing sum is non-negative, -1 otherwise.
struct RectangleMax {
  Int value;
  Rectangle rect;
  int sign = 1;
};

// Row subsets in parallel; for a fixed row set the best columns are the ones
// whose column sums share a sign. Ties resolve to the smallest row mask.
RectangleMax max_abs_rectangle_sum(const std::vector<Int>& weights, int rows, int cols);

// Entry r is the best rectangle with row mask r.
std::vector<RectangleMax> best_rectangle_per_row_set(const std::vector<Int>& weights, int rows, int cols);
// Serial reference: every one of the 2^rows * 2^cols rectangles.
RectangleMax max_abs_rectangle_sum_serial(const std::vector<Int>& weights, int rows, int cols);

}  // namespace ccl::kernels
