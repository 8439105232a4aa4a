#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace vpr {

using Rng = std::mt19937_64;

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Derives an independent child seed from a base seed and a path of stream
/// indices. Used everywhere a component needs its own seed stream.
inline std::uint64_t derive_seed(std::uint64_t base,
                                 std::initializer_list<std::uint64_t> path) {
  std::uint64_t s = mix64(base);
  for (auto p : path) s = mix64(s ^ mix64(p + 0x632be59bd9b4e019ULL));
  return s;
}

// Named stream tags so call sites don't collide.
namespace stream {
inline constexpr std::uint64_t kPolicy = 1;
inline constexpr std::uint64_t kOpponent = 2;
inline constexpr std::uint64_t kVerifier = 3;
inline constexpr std::uint64_t kRollout = 4;
inline constexpr std::uint64_t kEval = 5;
inline constexpr std::uint64_t kGeneration = 6;
}  // namespace stream

/// Uniform index in [0, n). n must be > 0.
template <class Gen>
std::size_t uniform_index(Gen& gen, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(gen);
}

}  // namespace vpr
