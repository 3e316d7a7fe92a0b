// Serial reference vs OpenMP kernel, best of several runs each. The
// rectangle reference enumerates every rectangle, so its ratio also
// includes the row-set algorithm, not only threading.
//
//   bench_kernels [repeats]

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>

#include "ccl/kernels/gap_kernels.hpp"
#include "ccl/kernels/rectangle_kernels.hpp"
#include "ccl/kernels/sweep_kernels.hpp"
#include "ccl/measures/measures.hpp"
#include "ccl/verify/generators.hpp"

using namespace ccl;

namespace {

double best_of(int repeats, const std::function<void()>& fn) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void row(const std::string& name, double serial, double parallel, bool agree) {
  std::printf("%-40s %10.4f %10.4f %7.2fx  %s\n", name.c_str(), serial, parallel, serial / parallel,
              agree ? "same" : "DIFFERENT");
}

}  // namespace

int main(int argc, char** argv) {
  const int repeats = argc > 1 ? std::atoi(argv[1]) : 3;
  std::printf("threads: %d\n", omp_get_max_threads());
  std::printf("%-40s %10s %10s %8s\n", "kernel", "serial s", "openmp s", "speedup");

  {
    Rng rng(1);
    const Domain d{8, 8};
    std::vector<DeterministicProtocol> members;
    for (int i = 0; i < 200'000; ++i) members.push_back(gen::random_protocol(d, 4, rng));
    std::vector<Int> a, b;
    double s = best_of(repeats, [&] { a = kernels::enumerated_accept_grid_serial(members, d); });
    double p = best_of(repeats, [&] { b = kernels::enumerated_accept_grid(members, d); });
    row("accept grid, 200k members, 8x8", s, p, a == b);
  }
  {
    Rng rng(2);
    for (int side : {8, 10}) {
      std::vector<Int> w(side * side);
      for (auto& v : w) v = rng.uniform_int(-50, 50);
      kernels::RectangleMax a, b;
      double s = best_of(repeats, [&] { a = kernels::max_abs_rectangle_sum_serial(w, side, side); });
      double p = best_of(repeats, [&] { b = kernels::max_abs_rectangle_sum(w, side, side); });
      row("max rectangle sum (all-rect ref), " + std::to_string(side) + "x" + std::to_string(side), s, p, a.value == b.value);
    }
  }
  {
    auto score = measures::log_inv_disc_prime().apply;
    std::vector<double> a, b;
    double s = best_of(1, [&] { a = kernels::score_all_matrices_serial(3, 3, score); });
    double p = best_of(1, [&] { b = kernels::score_all_matrices(3, 3, score); });
    row("log 1/disc' over all 3x3 matrices", s, p, a == b);
  }
  return 0;
}
