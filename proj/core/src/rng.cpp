#include "convsel/rng.hpp"

#include <numeric>

namespace convsel {

void fill_uniform(std::span<float> out, std::uint64_t seed, float lo, float hi) noexcept {
  SplitMix64 rng(seed);
  for (float& v : out) v = rng.next_float(lo, hi);
}

void shuffled_indices(std::span<std::size_t> out, std::uint64_t seed) noexcept {
  std::iota(out.begin(), out.end(), std::size_t{0});
  SplitMix64 rng(seed);
  for (std::size_t i = out.size(); i > 1; --i) {
    const std::size_t j = rng.next_below(i);
    std::swap(out[i - 1], out[j]);
  }
}

}  // namespace convsel
