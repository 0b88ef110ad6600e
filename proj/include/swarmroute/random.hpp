#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace swarmroute {

/// Engine used for every stochastic component. mt19937_64 output is fully
/// specified by the standard, so seeded sequences match across platforms.
using Rng = std::mt19937_64;

/// Uniform double in [0, 1) built from the top 53 bits of one engine draw.
/// std::uniform_real_distribution is implementation-defined, this is not.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform in [low, high). Rounding can land the affine map on `high`, so
/// the result is capped just below it.
inline double uniform(Rng& rng, double low, double high) {
  double x = low + (high - low) * uniform01(rng);
  return x < high ? x : std::nextafter(high, low);
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Combines several integers into one well-mixed seed.
inline std::uint64_t derive_seed(std::initializer_list<std::uint64_t> parts) {
  std::uint64_t h = 0x6a09e667f3bcc909ULL;
  for (auto p : parts) h = splitmix64(h ^ splitmix64(p));
  return h;
}

}  // namespace swarmroute
