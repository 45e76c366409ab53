#pragma once

// Per-sample random substreams: each sample's generator is a pure function of
// (seed, index), so samples can be produced in any order on any thread.

#include <cstdint>
#include <random>

namespace rimap {

using Engine = std::mt19937_64;

// SplitMix64 finalizer; spreads nearby (seed, index) keys over the state space.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline Engine substream(std::uint64_t seed, std::uint64_t index) {
  return Engine(mix64(mix64(seed) ^ index));
}

} // namespace rimap
