#pragma once

#include <cstdint>

namespace sdc {

// splitmix64, used for seeding and stream derivation.
inline uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// xoshiro256** seeded through splitmix64. Per-shot substreams are derived
// from (master seed, stream id, shot index), so aggregate results do not
// depend on how shots are scheduled across workers.
class Rng {
public:
  explicit Rng(uint64_t seed) {
    uint64_t sm = seed;
    for (auto& x : s_) x = splitmix64(sm);
  }

  static Rng for_shot(uint64_t master_seed, uint64_t stream, uint64_t shot) {
    uint64_t sm = master_seed;
    uint64_t a = splitmix64(sm);
    sm = a ^ (stream * 0x9e3779b97f4a7c15ull) ^ (shot + 0x2545f4914f6cdd1dull);
    return Rng(splitmix64(sm));
  }

  uint64_t next() {
    uint64_t result = rotl(s_[1] * 5, 7) * 9;
    uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  bool bit() { return next() >> 63; }

  // P(true) = threshold / 2^64.
  bool bernoulli_threshold(uint64_t threshold) { return next() < threshold; }

  // Unbiased-enough bounded draw (Lemire multiply-shift).
  uint64_t below(uint64_t n) {
    return static_cast<uint64_t>((static_cast<__uint128_t>(next()) * n) >> 64);
  }

private:
  static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  uint64_t s_[4];
};

// Probability encoded as a 64-bit threshold; p >= 1 saturates.
inline uint64_t probability_threshold(double p) {
  if (p <= 0.0) return 0;
  if (p >= 1.0) return ~0ull;
  return static_cast<uint64_t>(p * 18446744073709551616.0);
}

}  // namespace sdc
