#pragma once

#include <cstdint>
#include <random>

namespace ccl {

// Stream seed for (seed, index): independent runs stay reproducible no
// matter how indices are spread over workers.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// mt19937_64 with range reductions that do not depend on the standard
/// library's distribution classes, so streams are identical across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  Rng(std::uint64_t seed, std::uint64_t index) : engine_(derive_seed(seed, index)) {}

  std::uint64_t next() { return engine_(); }
  // Uniform in [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  // Uniform in [0, 1), 53-bit resolution.
  double uniform01();
  bool coin() { return (next() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ccl
