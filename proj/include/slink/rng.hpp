#pragma once

#include <cstdint>
#include <random>

namespace slink {

using Rng = std::mt19937_64;

/// Uniform in [0, 1) from explicit engine output; identical across platforms
/// for a given seed, unlike the std distributions.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// splitmix64 finalizer.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Deterministic sub-seed for (run seed, iteration, slot); feeds per-question
/// engines so parallel sampling stays reproducible.
inline std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t iteration, std::uint64_t slot) {
  return mix64(mix64(seed ^ 0x5851f42d4c957f2dULL) ^ mix64(iteration) ^ (slot * 0xda942042e4dd58b5ULL));
}

}  // namespace slink
