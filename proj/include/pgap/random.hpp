#pragma once

#include <cstdint>
#include <limits>

namespace pgap {

/// SplitMix64 generator. Satisfies UniformRandomBitGenerator.
///
/// Every random consumer in the library draws from an instance seeded via
/// `stream_seed(seed, index)`, where index is the shot or trial number. A
/// draw therefore depends only on (seed, index), which makes results
/// independent of how work is split across threads.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  constexpr double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  constexpr double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, bound). Lemire-style rejection keeps it unbiased.
  constexpr std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const auto r = (*this)();
      if (r >= threshold) return r % bound;
    }
  }

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

/// Seed for the index-th independent stream derived from a user seed.
constexpr std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
  return SplitMix64::mix(SplitMix64::mix(seed) ^ (index * 0xd1b54a32d192ed03ULL + 0x8cb92ba72f3d8dd7ULL));
}

}  // namespace pgap
