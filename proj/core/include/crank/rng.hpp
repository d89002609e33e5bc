#pragma once

#include <cstdint>
#include <string_view>

namespace crank {

// splitmix64; the sole randomness source of the library. Sub-generators are
// derived from a master seed by hashing a purpose tag and a counter, so every
// module draws from an independent, reproducible stream:
//   sub_seed = scramble(fnv1a(tag) ^ scramble(seed) ^ scramble(counter))
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
};

inline std::uint64_t scramble64(std::uint64_t x) { return SplitMix64(x).next(); }

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag, std::uint64_t counter = 0) {
  return scramble64(fnv1a64(tag) ^ scramble64(seed) ^ scramble64(counter + 0x5851f42d4c957f2dULL));
}

/// Deterministic generator with unbiased bounded draws.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_.next(); }

  /// Uniform in [0, bound), bound >= 1. Rejection sampling keeps it unbiased.
  std::uint64_t below(std::uint64_t bound) {
    std::uint64_t limit = ~0ULL - (~0ULL % bound + 1) % bound;
    std::uint64_t v;
    do {
      v = gen_.next();
    } while (v > limit);
    return v % bound;
  }

  /// Uniform integer in [lo, hi] inclusive.
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

 private:
  SplitMix64 gen_;
};

}  // namespace crank
