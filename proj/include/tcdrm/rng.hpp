// Seeded pseudo-random generator with a pinned algorithm.
//
// Workload streams are part of the reproducibility contract (reports cite
// the seed), so the generator is fixed here rather than delegated to the
// standard library: splitmix64 for the raw stream, and Lemire's
// multiply-shift reduction for bounded draws. Identical seeds produce
// identical streams on every platform.

#pragma once

#include <cstdint>

namespace tcdrm {

class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

  constexpr std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform draw in [0, bound). bound must be nonzero.
  std::uint64_t below(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * bound) >> 64);
  }

  // Uniform double in [0, 1).
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

}  // namespace tcdrm
