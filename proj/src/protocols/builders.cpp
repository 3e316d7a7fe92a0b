#include "ccl/protocols/builders.hpp"

#include <algorithm>

#include "ccl/core/error.hpp"
#include "ccl/numeric/exact.hpp"

namespace ccl {
namespace {

DeterministicProtocol bob_answers(Domain d, const BooleanMatrix& f, int x) {
  std::vector<std::uint8_t> row(f.cols());
  for (int y = 0; y < f.cols(); ++y) row[y] = f(x, y) ? 1 : 0;
  return DeterministicProtocol::speak(d, Speaker::Bob, row, DeterministicProtocol::leaf(d, false),
                                      DeterministicProtocol::leaf(d, true));
}

// Rows x in [lo, lo + 2^bits) that agree on the bits already sent.
DeterministicProtocol split(Domain d, const BooleanMatrix& f, int lo, int bits) {
  if (bits == 0) return bob_answers(d, f, std::min(lo, f.rows() - 1));
  const int half = 1 << (bits - 1);
  if (lo + half >= f.rows()) return split(d, f, lo, bits - 1);
  std::vector<std::uint8_t> table(f.rows());
  for (int x = 0; x < f.rows(); ++x) table[x] = x >= lo + half ? 1 : 0;
  return DeterministicProtocol::speak(d, Speaker::Alice, table, split(d, f, lo, bits - 1),
                                      split(d, f, lo + half, bits - 1));
}

}  // namespace

DeterministicProtocol table_protocol(const BooleanMatrix& f) {
  Domain d{f.rows(), f.cols()};
  check_domain(d);
  return split(d, f, 0, ceil_log2(static_cast<std::uint64_t>(f.rows())));
}

DeterministicProtocol rectangle_protocol(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b) {
  Domain d{static_cast<int>(a.size()), static_cast<int>(b.size())};
  check_domain(d);
  auto reject = DeterministicProtocol::leaf(d, false);
  auto bob = DeterministicProtocol::speak(d, Speaker::Bob, b, reject, DeterministicProtocol::leaf(d, true));
  return DeterministicProtocol::speak(d, Speaker::Alice, a, reject, bob);
}

}  // namespace ccl
