#include "ccl/kernels/sweep_kernels.hpp"

#include <exception>

#include "ccl/core/error.hpp"

namespace ccl::kernels {
namespace {
long sweep_size(int rows, int cols) {
  if (rows < 1 || cols < 1 || rows * cols > 20) throw GuardError("matrix sweep limited to 20 cells");
  return 1L << (rows * cols);
}
}  // namespace

std::vector<double> score_all_matrices(int rows, int cols, const MatrixScore& score) {
  const long n = sweep_size(rows, cols);
  std::vector<double> out(n);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 16)
  for (long c = 0; c < n; ++c) {
    try {
      out[c] = score(BooleanMatrix::from_code(rows, cols, static_cast<std::uint64_t>(c)));
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::vector<double> score_all_matrices_serial(int rows, int cols, const MatrixScore& score) {
  const long n = sweep_size(rows, cols);
  std::vector<double> out(n);
  for (long c = 0; c < n; ++c) out[c] = score(BooleanMatrix::from_code(rows, cols, static_cast<std::uint64_t>(c)));
  return out;
}

}  // namespace ccl::kernels
