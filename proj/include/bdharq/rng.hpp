#pragma once

#include <cstdint>

namespace bdharq {

// splitmix64, the public-domain 64-bit mixing generator. Streams are cheap
// to construct, so simulations derive one independent stream per trial (and
// per sweep row) from a root seed; results then depend only on the seed and
// trial index, never on scheduling or thread count.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool bernoulli(double prob) { return next_unit() < prob; }

 private:
  std::uint64_t state_;
};

// Decorrelates substream seeds drawn from one root seed. The index is mixed
// through an odd multiplier before seeding so that adjacent indices land far
// apart in the splitmix sequence.
inline std::uint64_t derive_stream_seed(std::uint64_t root, std::uint64_t index) {
  SplitMix64 mixer(root ^ ((index + 1) * 0xA0761D6478BD642FULL));
  return mixer.next_u64();
}

}  // namespace bdharq
