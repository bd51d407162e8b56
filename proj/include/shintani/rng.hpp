// Deterministic PRNG for sampling: xoshiro256** seeded via splitmix64.
// std::mt19937 would do for quality, but the standard distributions are not
// bit-identical across library implementations, and reproducibility of
// sampled reports across platforms is part of the contract here.

#ifndef SHINTANI_RNG_HPP_
#define SHINTANI_RNG_HPP_

#include <cstdint>

namespace shintani {

inline constexpr const char* kRngIdentifier = "xoshiro256starstar/splitmix64";

class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    // splitmix64 stream expands the seed into the four state words.
    std::uint64_t x = seed;
    for (auto& w : s_) {
      x += 0x9e3779b97f4a7c15ULL;
      std::uint64_t z = x;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
      w = z ^ (z >> 31);
    }
    if (s_[0] == 0 && s_[1] == 0 && s_[2] == 0 && s_[3] == 0) s_[0] = 1;
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform on [0, bound) by rejection, so the result is unbiased and
  // identical on every platform.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v;
    do {
      v = next_u64();
    } while (v >= limit);
    return v % bound;
  }

  // Uniform on the inclusive range [lo, hi].
  long range(long lo, long hi) {
    return lo + static_cast<long>(below(
                    static_cast<std::uint64_t>(hi - lo) + 1));
  }

 private:
  static std::uint64_t rotl(std::uint64_t v, int k) {
    return (v << k) | (v >> (64 - k));
  }
  std::uint64_t s_[4];
};

}  // namespace shintani

#endif  // SHINTANI_RNG_HPP_
