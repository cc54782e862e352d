#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace boundlab {

// mt19937_64 output is fixed by the standard; the helpers below avoid the
// implementation-defined std distributions so streams are portable.
using Rng = std::mt19937_64;

// SplitMix64 finalizer over the combined pair; used to derive child seeds.
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9E3779B97F4A7C15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Uniform in [0, 1).
inline double canonical(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline double uniform(Rng& rng, double lo, double hi) { return lo + (hi - lo) * canonical(rng); }

// Uniform in [-half_width, half_width).
inline double symmetric(Rng& rng, double half_width) {
  return half_width * (2.0 * canonical(rng) - 1.0);
}

// Box-Muller, one draw per call.
inline double standard_normal(Rng& rng) {
  double u1 = canonical(rng);
  while (u1 <= 0.0) u1 = canonical(rng);
  const double u2 = canonical(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
}

}  // namespace boundlab
