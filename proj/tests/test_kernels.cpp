#include "doctest.h"

#include "ccl/kernels/gap_kernels.hpp"
#include "ccl/kernels/rectangle_kernels.hpp"
#include "ccl/kernels/sweep_kernels.hpp"
#include "ccl/verify/generators.hpp"

using namespace ccl;

TEST_CASE("parallel accept grid equals the serial reference") {
  Rng rng(2);
  Domain d{4, 3};
  std::vector<DeterministicProtocol> members;
  for (int i = 0; i < 300; ++i) members.push_back(gen::random_protocol(d, 3, rng));
  CHECK(kernels::enumerated_accept_grid(members, d) == kernels::enumerated_accept_grid_serial(members, d));
}

TEST_CASE("rectangle maximum: greedy columns match full enumeration") {
  Rng rng(4);
  for (int t = 0; t < 200; ++t) {
    int rows = static_cast<int>(rng.uniform_int(1, 5)), cols = static_cast<int>(rng.uniform_int(1, 5));
    std::vector<Int> w(rows * cols);
    for (auto& v : w) v = rng.uniform_int(-9, 9);
    auto fast = kernels::max_abs_rectangle_sum(w, rows, cols);
    auto slow = kernels::max_abs_rectangle_sum_serial(w, rows, cols);
    REQUIRE(fast.value == slow.value);
    Int s = 0;
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j)
        if (fast.rect.contains(i, j)) s += w[i * cols + j];
    CHECK(abs(s) == fast.value);
    CHECK(fast.sign * s == fast.value);
  }
}

TEST_CASE("matrix sweep equals serial sweep") {
  auto score = [](const BooleanMatrix& b) { return static_cast<double>(b.count_ones() * 3 + b(0, 1)); };
  auto a = kernels::score_all_matrices(3, 3, score);
  auto b = kernels::score_all_matrices_serial(3, 3, score);
  CHECK(a.size() == 512);
  CHECK(a == b);
}
