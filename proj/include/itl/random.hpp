#pragma once

#include <cstdint>

namespace itl {

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Independent stream key for (seed, index); used as the per-trial seed.
constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  return mix64(mix64(seed + 0x9E3779B97F4A7C15ULL) ^ (index * 0xD1B54A32D192ED03ULL + 1));
}

/// Counter-based splitmix64 generator. Draws are identical on every platform.
class SplitMix {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()() { return mix64(state_ += 0x9E3779B97F4A7C15ULL); }

  /// Uniform in [lo, hi] by rejection, so results do not depend on a library distribution.
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) {
    const std::uint64_t span = hi - lo + 1;
    if (span == 0) return (*this)();
    const std::uint64_t limit = max() - max() % span;
    std::uint64_t r;
    do r = (*this)(); while (r >= limit);
    return lo + r % span;
  }

  bool coin() { return (*this)() >> 63; }

 private:
  std::uint64_t state_;
};

}  // namespace itl
