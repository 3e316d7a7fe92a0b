#pragma once

#include <vector>

#include "ccl/numeric/exact.hpp"
#include "ccl/protocols/deterministic.hpp"

namespace ccl::kernels {

// acc grid (row-major) of an explicit member list: every member run on
// every input. OpenMP over members.
std::vector<Int> enumerated_accept_grid(const std::vector<DeterministicProtocol>& members, Domain d);

// Serial reference for the above.
std::vector<Int> enumerated_accept_grid_serial(const std::vector<DeterministicProtocol>& members, Domain d);

}  // namespace ccl::kernels
