// Named, seed-derived random streams. A master seed is split into independent
// streams by hashing a stream name (and optional index) into it, so adding a
// consumer never perturbs the draws of another.
#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace liqsim {

using Rng = std::mt19937_64;

/// SplitMix64 finaliser.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// 64-bit FNV-1a.
constexpr std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h = 0xCBF29CE484222325ull) {
  for (char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ull;
  }
  return h;
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag) {
  return splitmix64(seed ^ fnv1a(tag));
}
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed ^ splitmix64(index + 0x632BE59BD9B4E019ull));
}

inline Rng make_stream(std::uint64_t master, std::string_view name) {
  return Rng(derive_seed(master, name));
}
inline Rng make_stream(std::uint64_t master, std::string_view name, std::uint64_t index) {
  return Rng(derive_seed(derive_seed(master, name), index));
}

/// Normal(mean, sd) clamped into [lo, hi]. sd == 0 returns mean without
/// consuming randomness.
inline double truncated_normal(Rng& rng, double mean, double sd, double lo, double hi) {
  double x = mean;
  if (sd > 0) x = std::normal_distribution<double>(mean, sd)(rng);
  if (x < lo) x = lo;
  if (x > hi) x = hi;
  return x;
}

}  // namespace liqsim
