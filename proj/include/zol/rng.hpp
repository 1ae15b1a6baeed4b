#pragma once

// Counter-based randomness: every draw is a pure function of a key, so
// results do not depend on evaluation order or on how work is split.

#include <cstdint>
#include <initializer_list>

namespace zol {

// splitmix64 finaliser.
inline std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline std::uint64_t hash_key(std::initializer_list<std::uint64_t> words) noexcept {
  std::uint64_t h = 0x5851f42d4c957f2dull;
  for (std::uint64_t w : words) h = mix64(h ^ w);
  return h;
}

// Uniform in [0, 1) from the top 53 bits.
inline double unit_interval(std::uint64_t h) noexcept { return static_cast<double>(h >> 11) * 0x1.0p-53; }

inline bool bernoulli(std::uint64_t h, double p) noexcept { return unit_interval(h) < p; }

}  // namespace zol
