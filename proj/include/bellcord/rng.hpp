#pragma once

#include <cstdint>

namespace bellcord {

// Bijective 64-bit mixer (the SplitMix64 sequence); used only to expand
// (seed, stream) pairs into generator states.
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t s) : state(s) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
};

// xoshiro256++ (Blackman & Vigna, public-domain reference algorithm).
// Streams are addressed by (seed, stream) so that any single trial's
// randomness can be reproduced in isolation, independent of how trials are
// scheduled across worker threads.
class Xoshiro256pp {
 public:
  static Xoshiro256pp for_stream(std::uint64_t seed, std::uint64_t stream) {
    SplitMix64 sm(seed + stream * 0x9E3779B97F4A7C15ull);
    Xoshiro256pp g;
    g.s_[0] = sm.next();
    g.s_[1] = sm.next();
    g.s_[2] = sm.next();
    g.s_[3] = sm.next();
    if ((g.s_[0] | g.s_[1] | g.s_[2] | g.s_[3]) == 0) g.s_[0] = 1;
    return g;
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform double in [0, 1) with 53 random bits.
  double next_unit() { return double(next() >> 11) * 0x1.0p-53; }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::uint64_t s_[4] = {1, 2, 3, 4};
};

}  // namespace bellcord
