#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace geophase {

// Weyl increment of the SplitMix64 stream.
inline constexpr std::uint64_t kSplitMix64Gamma = 0x9E3779B97F4A7C15ull;

// SplitMix64 output scramble (Steele, Lea & Flood).
constexpr std::uint64_t splitmix64_mix(std::uint64_t x) {
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// n-th output (0-based) of a SplitMix64 stream seeded with `seed`.
constexpr std::uint64_t splitmix64_nth(std::uint64_t seed, std::uint64_t n) {
  return splitmix64_mix(seed + (n + 1) * kSplitMix64Gamma);
}

// Per-trial seed: trial i uses the i-th output of the SplitMix64 stream
// seeded with base_seed, so trials can run in any order (or in parallel)
// and still reproduce bit-identical results.
constexpr std::uint64_t trial_seed(std::uint64_t base_seed, std::uint64_t trial_index) {
  return splitmix64_nth(base_seed, trial_index);
}

// Algorithm names recorded in run metadata. Every mapping from engine output
// to variate is spelled out here instead of delegating to std::<distribution>,
// whose algorithms are unspecified and differ across standard libraries.
inline constexpr const char* kRngAlgorithm =
    "mt19937_64(seed); uniform = (x >> 11) * 2^-53; "
    "normal = Box-Muller cosine branch, sigma*sqrt(-2 ln U1)*cos(2 pi U2), U1 in (0,1]; "
    "exponential = inversion, -mean * ln(1 - U)";

inline constexpr const char* kSeedDerivation =
    "SplitMix64: stream[i] = mix(seed + (i+1)*0x9E3779B97F4A7C15); "
    "trial seeds = SplitMix64(base_seed)[trial]; "
    "per-run substreams: drift = SplitMix64(seed)[0], schedule = SplitMix64(seed)[1]";

// Deterministic variate source; same seed, same platform-independent stream.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // [0, 1), 53-bit resolution.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // N(0, sigma^2) via the Box-Muller cosine branch; consumes two uniforms.
  double normal(double sigma) {
    const double u1 = (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
    const double u2 = uniform01();
    return sigma * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  }

  // Exponential with the given (finite) mean, by inversion.
  double exponential(double mean) { return -mean * std::log1p(-uniform01()); }

  std::uint64_t raw() { return engine_(); }

 private:
  static constexpr double kPi = 3.14159265358979323846264338327950288;
  std::mt19937_64 engine_;
};

}  // namespace geophase
