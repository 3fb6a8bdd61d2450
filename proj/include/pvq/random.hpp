#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace pvq {

/// One step of the SplitMix64 mixer; used to derive well-separated stream
/// seeds from a master seed plus small integer tags.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed for the Monte Carlo cell (l, k): the master seed chained through
/// splitmix64 with each tag, so every cell gets an unrelated stream and the
/// result is independent of the order cells are evaluated in.
inline std::uint64_t cell_seed(std::uint64_t master_seed, int l, int k) {
  std::uint64_t s = splitmix64(master_seed);
  s = splitmix64(s ^ static_cast<std::uint64_t>(l));
  s = splitmix64(s ^ static_cast<std::uint64_t>(k));
  return s;
}

/// Uniform double in [0, 1) with 53 random bits. The bit mapping is spelled
/// out (instead of std::uniform_real_distribution) so streams reproduce
/// bit-for-bit across standard libraries.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform double in (0, 1]; safe as a log() argument.
inline double uniform01_positive(std::mt19937_64& rng) {
  return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

/// Two independent standard gaussians via the Box-Muller transform.
inline std::array<double, 2> gaussian_pair(std::mt19937_64& rng) {
  const double u = uniform01_positive(rng);
  const double v = uniform01(rng);
  const double r = std::sqrt(-2.0 * std::log(u));
  const double a = 2.0 * std::numbers::pi * v;
  return {r * std::cos(a), r * std::sin(a)};
}

}  // namespace pvq
