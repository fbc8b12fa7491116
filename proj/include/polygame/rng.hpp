#ifndef POLYGAME_RNG_HPP
#define POLYGAME_RNG_HPP

#include <cstdint>

namespace polygame {

// Deterministic PRNG used for random games and seeded test points.
//
// Algorithm (pinned so that identical seeds reproduce identical streams on
// every platform, independent of the standard library):
//   * the 256-bit state is seeded from a 64-bit seed via four iterations of
//     SplitMix64 (Steele, Lea, Flood 2014),
//   * the output stream is xoshiro256++ 1.0 (Blackman, Vigna 2019),
//   * doubles in [0,1) are formed as (next() >> 11) * 2^-53.
class Xoshiro256pp {
 public:
  explicit Xoshiro256pp(std::uint64_t seed) {
    std::uint64_t s = seed;
    for (auto& word : state_) word = splitmix64(s);
  }

  std::uint64_t next() {
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

  // Uniform on [0,1), 53 bits of precision.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  static std::uint64_t splitmix64(std::uint64_t& s) {
    s += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_[4];
};

}  // namespace polygame

#endif  // POLYGAME_RNG_HPP
