#pragma once

#include <cstdint>

namespace gould {

// SplitMix64. Small, splittable, and identical on every platform, so seeded
// reports are reproducible byte for byte.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n) {
    // rejection sampling on the top bits; unbiased and deterministic
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % n;
  }

  // Independent substream, for per-chain generators.
  SplitMix64 split(std::uint64_t stream) {
    SplitMix64 seeder(state_ ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
    return SplitMix64(seeder.next());
  }

 private:
  std::uint64_t state_;
};

} // namespace gould
