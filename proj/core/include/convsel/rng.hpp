#pragma once

#include <cstdint>
#include <span>

namespace convsel {

/// Deterministic 64-bit generator (splitmix64). Used instead of the
/// standard distributions so that streams are identical across platforms
/// and standard-library versions.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1) with 24 bits of mantissa, exact in fp32.
  float next_unit_float() noexcept {
    return static_cast<float>(next() >> 40) * (1.0f / 16777216.0f);
  }

  /// Uniform in [lo, hi).
  float next_float(float lo, float hi) noexcept {
    return lo + (hi - lo) * next_unit_float();
  }

  double next_unit_double() noexcept {
    return static_cast<double>(next() >> 11) * (1.0 / 9007199254740992.0);
  }

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t next_below(std::uint64_t bound) noexcept { return next() % bound; }

 private:
  std::uint64_t state_;
};

/// Order-preserving combiner for deriving stream seeds from components.
constexpr std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) noexcept {
  a ^= b + 0x9e3779b97f4a7c15ull + (a << 6) + (a >> 2);
  return a;
}

void fill_uniform(std::span<float> out, std::uint64_t seed, float lo, float hi) noexcept;

/// Deterministic Fisher-Yates permutation of [0, n).
void shuffled_indices(std::span<std::size_t> out, std::uint64_t seed) noexcept;

}  // namespace convsel
