#pragma once

#include <cstdint>

namespace hyperball {

/// Deterministic stream generator: xoshiro256++ seeded through splitmix64.
///
/// The update rules are pinned down here so that ports in other languages can
/// reproduce the streams bit for bit:
///
///   splitmix64(x):  z = (x += 0x9E3779B97F4A7C15)
///                   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///                   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///                   return z ^ (z >> 31)
///   state[0..3]  =  four successive splitmix64 outputs of the seed
///   next()       =  xoshiro256++ (Blackman & Vigna)
///   uniform()    =  (next() >> 11) * 2^-53, a double in [0, 1)
///   normal()     =  Box-Muller: u1 = 1 - uniform(), u2 = uniform(),
///                   r = sqrt(-2 ln u1); returns r cos(2 pi u2) and caches
///                   r sin(2 pi u2) for the following call.
///
/// A state is single-owner: never share one instance across threads.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();

  /// Uniform double in [0, 1).
  double uniform();

  /// Standard normal deviate.
  double normal();

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::uint64_t state_[4];
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace hyperball
