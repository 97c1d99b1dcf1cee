#pragma once

#include <cstdint>
#include <random>

namespace aal {

/// All randomized operations draw through this wrapper so streams depend only
/// on the seed, never on the standard library's distribution internals.
/// The engine is std::mt19937_64 (its output sequence is pinned by the
/// standard); bounded draws use Lemire-style rejection on top of it.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, bound); bound must be nonzero.
  std::uint64_t below(std::uint64_t bound) {
    // multiply-shift with rejection: unbiased and platform independent
    __uint128_t m = (__uint128_t)next() * bound;
    auto lo = (std::uint64_t)m;
    if (lo < bound) {
      std::uint64_t cutoff = (0 - bound) % bound;  // 2^64 mod bound
      while (lo < cutoff) {
        m = (__uint128_t)next() * bound;
        lo = (std::uint64_t)m;
      }
    }
    return (std::uint64_t)(m >> 64);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double unit() { return (next() >> 11) * 0x1.0p-53; }

private:
  std::mt19937_64 engine_;
};

/// Stable per-stream seed derivation (seed, stream index) -> child seed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace aal
