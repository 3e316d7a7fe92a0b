#pragma once

#include <cstdint>
#include <vector>

#include "ccl/core/matrix.hpp"
#include "ccl/protocols/deterministic.hpp"

namespace ccl {

// Alice sends the bits of x, then Bob announces f(x, y).
// Cost ceil(log2 rows) + 1.
DeterministicProtocol table_protocol(const BooleanMatrix& f);

// Alice sends a(x); on 1 Bob outputs b(y), on 0 the protocol rejects.
// Accepts exactly on a(x) b(y) = 1; cost 1.
DeterministicProtocol rectangle_protocol(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b);

}  // namespace ccl
