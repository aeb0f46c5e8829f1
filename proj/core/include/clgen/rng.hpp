#pragma once

#include <cstdint>

#include "clgen/types.hpp"

namespace clgen {

// splitmix64 step: advances the word by the golden-gamma and finalizes.
// Bijective on 64-bit words.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Stream key for source node u. Injective in u for a fixed seed: u -> seed + u*gamma
// is a bijection mod 2^64 (gamma odd) and mix64 is a bijection.
inline std::uint64_t node_rng_key(std::uint64_t global_seed, node_t u) {
  return mix64(global_seed + static_cast<std::uint64_t>(u) * 0x9e3779b97f4a7c15ULL);
}

// Deterministic per-stream generator (xoshiro256++ seeded through splitmix64).
// Streams with equal keys emit identical sequences.
class RngStream {
 public:
  RngStream(std::uint64_t global_seed, node_t u) : RngStream(node_rng_key(global_seed, u)) {}

  explicit RngStream(std::uint64_t key) {
    std::uint64_t sm = key;
    bool nonzero = false;
    for (auto& word : state_) {
      sm += 0x9e3779b97f4a7c15ULL;
      std::uint64_t z = sm;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
      word = z ^ (z >> 31);
      nonzero |= word != 0;
    }
    if (!nonzero) state_[0] = 1;  // all-zero state is a fixed point
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform real strictly inside (0,1): 53-bit mantissa, exact zeros rejected.
  // (x >> 11) * 2^-53 never reaches 1.
  double next_open01() {
    for (;;) {
      const double r = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
      if (r > 0.0) return r;
    }
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::uint64_t state_[4];
};

}  // namespace clgen
