#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

// Randomness helpers. std::mt19937_64 has a fully specified output sequence;
// bounded draws and shuffles are done by hand here because the standard
// distributions are allowed to differ between library implementations, and
// seeded runs must reproduce bit-for-bit.
namespace rlap {

using Rng = std::mt19937_64;

// Unbiased draw from [0, n). n must be positive.
inline std::size_t uniform_index(Rng& rng, std::size_t n) {
  const std::uint64_t bound = n;
  const std::uint64_t reject_below = (0 - bound) % bound;  // 2^64 mod n
  for (;;) {
    const std::uint64_t r = rng();
    if (r >= reject_below) return static_cast<std::size_t>(r % bound);
  }
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform_real01(Rng& rng) { return (rng() >> 11) * 0x1.0p-53; }

// Fisher-Yates.
template <typename T>
void shuffle_vec(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[uniform_index(rng, i)]);
  }
}

}  // namespace rlap
