#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace harvest {

using Rng = std::mt19937_64;

/// splitmix64 finalizer; good avalanche, cheap.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Derives an independent sub-seed from (seed, a, b). Every RNG stream in the
/// toolkit is created through this, so a (master_seed, run_index) pair pins
/// the whole simulation.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
  return splitmix64(splitmix64(seed ^ splitmix64(a)) ^ splitmix64(b + 0x6a09e667f3bcc909ULL));
}

/// Uniform draw from [0, n). n must be positive.
inline std::size_t uniform_index(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

/// Uniform draw from [0, 1).
inline double uniform_real(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

/// One Beta(a, b) sample via two gamma draws.
inline double beta_sample(Rng& rng, double a, double b) {
  const double x = std::gamma_distribution<double>(a, 1.0)(rng);
  const double y = std::gamma_distribution<double>(b, 1.0)(rng);
  const double s = x + y;
  return s > 0.0 ? x / s : 0.5;
}

/// Uniform element of a non-empty span.
template <typename T>
const T& uniform_choice(Rng& rng, std::span<const T> items) {
  return items[uniform_index(rng, items.size())];
}

}  // namespace harvest
