#pragma once

// Deterministic random streams. Replicate i of an experiment with base seed s
// draws from a stream seeded with derive_seed(s, i) = splitmix64(s ^ (i+1)*phi64),
// so serial and parallel schedules produce identical results.

#include <cstdint>
#include <random>

namespace hail {

using RngStream = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  return splitmix64(base ^ ((index + 1) * 0x9E3779B97F4A7C15ULL));
}

// Uniform in [0,1) with 53 random bits; half-open by construction.
inline double uniform01(RngStream& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(RngStream& rng, double a, double b) {
  return a + (b - a) * uniform01(rng);
}

inline double exponential(RngStream& rng, double rate) {
  double u = uniform01(rng);
  double x = -std::log1p(-u) / rate;
  return x > 0 ? x : 5e-324;  // keep samples strictly positive
}

inline std::int64_t poisson_count(RngStream& rng, double mean) {
  if (mean <= 0) return 0;
  std::poisson_distribution<std::int64_t> dist(mean);
  return dist(rng);
}

}  // namespace hail
