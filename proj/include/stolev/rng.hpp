#pragma once

#include <cstdint>
#include <cmath>

namespace stolev::rng {

// splitmix64 finalizer
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Per-path seed; independent of the order paths are processed in.
inline std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t path_index) {
  return mix64(mix64(master_seed) ^ mix64(path_index + 0x1234567887654321ULL));
}

// Counter-based stream: the k-th 64-bit word of a seeded stream.
inline std::uint64_t word_at(std::uint64_t seed, std::uint64_t k) {
  return mix64(seed + (k + 1) * 0x9E3779B97F4A7C15ULL);
}

// Uniform on the open interval (0,1).
inline double unit_open(std::uint64_t bits) {
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

struct StepDraws {
  double u;  // uniform on (-pi/2, pi/2)
  double e;  // unit exponential
};

// The two variates consumed by one stable increment, as a pure function
// of (seed, step index).
inline StepDraws draws_at(std::uint64_t seed, std::uint64_t step) {
  const double u1 = unit_open(word_at(seed, 2 * step));
  const double u2 = unit_open(word_at(seed, 2 * step + 1));
  constexpr double pi = 3.14159265358979323846;
  return {pi * (u1 - 0.5), -std::log(u2)};
}

}  // namespace stolev::rng
