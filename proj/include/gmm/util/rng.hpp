#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace gmm {

using Rng = std::mt19937_64;

/// Uniform double in [0, 1) from the top 53 bits; identical on every stdlib.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// FNV-1a, used to turn stage names into stream tags.
constexpr std::uint64_t tag_hash(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Counter-based seed split: each (master, trial, stage) gets its own stream,
/// and adding a new stage never perturbs the existing ones.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t trial,
                                 std::string_view stage) {
  return splitmix64(splitmix64(splitmix64(master) ^ trial) ^ tag_hash(stage));
}

}  // namespace gmm
