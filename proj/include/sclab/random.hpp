#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace sclab {

using Rng = std::mt19937_64;

// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30U)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27U)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31U);
}

// Seed-split rule shared by every randomized routine: stream `i` of a run
// seeded with `seed` uses mix64(mix64(seed) ^ (i + 1) * golden). Trials,
// retries and sub-experiments each take their own stream so serial and
// threaded executions draw identical numbers.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  return mix64(mix64(seed) ^ ((stream + 1) * 0x9E3779B97F4A7C15ULL));
}

inline Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
  return Rng(derive_seed(seed, stream));
}

// Uniform integer in [0, n). Implemented here rather than through
// std::uniform_int_distribution so outputs do not depend on the standard
// library vendor.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
  if (n <= 1) return 0;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t v = rng();
  while (v >= limit) v = rng();
  return v % n;
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11U) * 0x1.0p-53;
}

}  // namespace sclab
