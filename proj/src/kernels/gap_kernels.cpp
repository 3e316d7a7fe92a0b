#include "ccl/kernels/gap_kernels.hpp"

#include <cstdint>

namespace ccl::kernels {

std::vector<Int> enumerated_accept_grid(const std::vector<DeterministicProtocol>& members, Domain d) {
  const int cells = d.inputs();
  const long n = static_cast<long>(members.size());
  std::vector<std::int64_t> counts(cells, 0);
#pragma omp parallel
  {
    std::vector<std::int64_t> local(cells, 0);
#pragma omp for schedule(static)
    for (long i = 0; i < n; ++i) {
      const auto& p = members[i];
      for (int x = 0; x < d.x_size; ++x)
        for (int y = 0; y < d.y_size; ++y)
          if (p.eval(x, y)) ++local[x * d.y_size + y];
    }
#pragma omp critical
    for (int k = 0; k < cells; ++k) counts[k] += local[k];
  }
  std::vector<Int> out;
  out.reserve(cells);
  for (auto c : counts) out.emplace_back(static_cast<long>(c));
  return out;
}

std::vector<Int> enumerated_accept_grid_serial(const std::vector<DeterministicProtocol>& members, Domain d) {
  std::vector<Int> out(d.inputs(), Int(0));
  for (const auto& p : members)
    for (int x = 0; x < d.x_size; ++x)
      for (int y = 0; y < d.y_size; ++y)
        if (p.eval(x, y)) out[x * d.y_size + y] += 1;
  return out;
}

}  // namespace ccl::kernels
