#pragma once

#include <concepts>
#include <cstdint>
#include <limits>
#include <random>

namespace onemax {

// The engine is fully specified by the standard, so streams are identical on
// every conforming platform. The standard *distributions* are not, which is
// why every draw below goes through our own transforms.
using Rng = std::mt19937_64;

template <class G>
concept BitSource = std::uniform_random_bit_generator<G> &&
                    (G::min() == 0) &&
                    (G::max() == std::numeric_limits<std::uint64_t>::max());

/// Uniform double in [0, 1) with 53 bits of resolution.
template <BitSource G>
inline double uniform01(G& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Fair coin from the top bit of one draw.
template <BitSource G>
inline bool coin(G& rng) {
  return (rng() >> 63) != 0;
}

/// Uniform integer in [0, bound). Lemire's multiply-shift with rejection, so the
/// result is exactly uniform. `bound` must be positive.
template <BitSource G>
inline std::uint64_t uniform_below(G& rng, std::uint64_t bound) {
  __extension__ using u128 = unsigned __int128;
  std::uint64_t x = rng();
  u128 m = static_cast<u128>(x) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      x = rng();
      m = static_cast<u128>(x) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

}  // namespace onemax
