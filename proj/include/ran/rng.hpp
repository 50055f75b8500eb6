#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace ran {

/// Random engine used everywhere in the library. std::mt19937_64 has a
/// fully specified output sequence, so a seed reproduces the same stream on
/// every conforming standard library.
using Engine = std::mt19937_64;

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seed for trial `index` of a run seeded with `seed`.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return mix64(mix64(seed) ^ (index + 0x632be59bd9b4e019ULL));
}

/// Uniform integer in [0, bound) without modulo bias (Lemire's multiply and
/// reject). `bound` must be positive.
inline std::uint64_t uniform_below(Engine& engine, std::uint64_t bound) {
  unsigned __int128 product = static_cast<unsigned __int128>(engine()) * bound;
  auto low = static_cast<std::uint64_t>(product);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      product = static_cast<unsigned __int128>(engine()) * bound;
      low = static_cast<std::uint64_t>(product);
    }
  }
  return static_cast<std::uint64_t>(product >> 64);
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(Engine& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

}  // namespace ran
