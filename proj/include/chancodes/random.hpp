#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <string_view>

namespace chancodes {

/// Generator used for every randomized routine.  Reports record
/// `kRngName` next to the seed so runs can be replayed.
using Rng = std::mt19937_64;
inline constexpr std::string_view kRngName = "mt19937_64";

/// Uniform integer in [0, bound) by rejection, independent of the standard
/// library's distribution implementation.  `bound` must be positive.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

/// Uniform real in [0, 1) with 53 random bits.
inline double uniform_unit(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// SplitMix64 finalizer; derives independent stream seeds from (seed, index).
inline std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace chancodes
