#pragma once

// Deterministic seeded randomness. Everything downstream (data generation,
// randomized sketchers, power-iteration starts) derives values by mixing a
// user seed with stream tags and element indices, so results do not depend
// on evaluation order or platform RNG internals.

#include <cmath>
#include <cstdint>
#include <numbers>

namespace fdsketch::rng {

// splitmix64 finalizer (Steele/Lea/Flood); bijective with full avalanche.
inline constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

inline constexpr std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  return mix64(mix64(a) ^ b);
}

inline constexpr std::uint64_t mix(std::uint64_t a, std::uint64_t b,
                                   std::uint64_t c) {
  return mix64(mix(a, b) ^ c);
}

inline constexpr std::uint64_t mix(std::uint64_t a, std::uint64_t b,
                                   std::uint64_t c, std::uint64_t d) {
  return mix64(mix(a, b, c) ^ d);
}

// Stream tags keep independent random streams from colliding.
inline constexpr std::uint64_t kStreamSignal = 1;
inline constexpr std::uint64_t kStreamNoise = 2;
inline constexpr std::uint64_t kStreamSubspace = 3;
inline constexpr std::uint64_t kStreamSubspaceRetry = 4;
inline constexpr std::uint64_t kStreamPowerStart = 5;
inline constexpr std::uint64_t kStreamHashSlot = 6;
inline constexpr std::uint64_t kStreamHashSign = 7;
inline constexpr std::uint64_t kStreamProjection = 8;
inline constexpr std::uint64_t kStreamSampler = 9;
inline constexpr std::uint64_t kStreamBenchCell = 10;
inline constexpr std::uint64_t kStreamMethodSeed = 11;

// Uniform double in [0, 1) from the top 53 bits.
inline constexpr double to_unit(std::uint64_t x) {
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}

// Uniform double in (0, 1); never 0, safe as a log() argument.
inline constexpr double to_open_unit(std::uint64_t x) {
  return (static_cast<double>(x >> 11) + 0.5) * 0x1.0p-53;
}

// Standard normal via Box-Muller from two independent 64-bit words.
inline double gaussian_from(std::uint64_t h1, std::uint64_t h2) {
  const double r = std::sqrt(-2.0 * std::log(to_open_unit(h1)));
  return r * std::cos(2.0 * std::numbers::pi * to_unit(h2));
}

// Standard normal addressed by (seed, stream, index); order-free.
inline double indexed_gaussian(std::uint64_t seed, std::uint64_t stream,
                               std::uint64_t index) {
  return gaussian_from(mix(seed, stream, index, 0), mix(seed, stream, index, 1));
}

// Sequential splitmix64 walker for the few places that draw in stream order
// (reservoir samplers).
class SplitMix {
 public:
  explicit SplitMix(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  double next_unit() { return to_unit(next()); }

 private:
  std::uint64_t state_;
};

}  // namespace fdsketch::rng
