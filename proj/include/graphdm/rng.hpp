#ifndef GRAPHDM_RNG_HPP
#define GRAPHDM_RNG_HPP

#include <cstdint>

namespace graphdm {

// SplitMix64 (Steele/Lea/Flood). Pinned here, with the exact constants below,
// so that seeded sweeps and searches reproduce bit-for-bit across platforms
// and implementations.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool next_bit() { return (next() & 1ull) != 0; }

 private:
  std::uint64_t state_;
};

// Decorrelated seed for sample `index` of a seeded family. Samples can then
// be evaluated in any order (or in parallel) without changing the stream any
// of them sees.
inline std::uint64_t child_seed(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 g(seed ^ (0x9E3779B97F4A7C15ull * (index + 1)));
  return g.next();
}

}  // namespace graphdm

#endif
