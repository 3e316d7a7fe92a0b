#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "ccl/core/matrix.hpp"

namespace ccl::kernels {

using MatrixScore = std::function<double(const BooleanMatrix&)>;

// score(from_code(rows, cols, c)) for every code c < 2^(rows*cols).
// `score` must be safe to call concurrently.
std::vector<double> score_all_matrices(int rows, int cols, const MatrixScore& score);
std::vector<double> score_all_matrices_serial(int rows, int cols, const MatrixScore& score);

}  // namespace ccl::kernels
