#pragma once

#include <cstdint>
#include <functional>

namespace psdspar {

// Counter-based deterministic RNG. Every variate is a pure function of
// (seed, counter), so evaluation order and thread count cannot change a draw.

constexpr std::uint64_t kOddMultiplier = 0x9E3779B97F4A7C15ull;

inline std::uint64_t mix64(std::uint64_t x) {
  // splitmix64 finalizer
  x += kOddMultiplier;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Uniform in [0, 1) from 53 high bits.
inline double bits_to_unit(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

inline double counter_uniform(std::uint64_t seed, std::uint64_t counter) {
  return bits_to_unit(mix64(mix64(seed) ^ mix64(counter + 1)));
}

// Sub-seed for retry attempt t (t = 0 reuses the seed itself).
inline std::uint64_t attempt_subseed(std::uint64_t seed, std::uint64_t t) {
  return seed ^ (kOddMultiplier * t);
}

// Thread cap from PSDSPAR_THREADS (0 or unset = hardware concurrency), read once.
int thread_cap();

// Static block partition of [0, n); fn(i) must only write state owned by i so
// the result is independent of the partition.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace psdspar
