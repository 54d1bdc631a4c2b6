#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace fpp {

/// SplitMix64 (Steele, Lea, Flood 2014): a 64-bit Weyl counter pushed
/// through a fixed avalanche mix. Fully specified by its seed, so
/// shuffles and initializations reproduce on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept;
  /// Uniform integer in [0, bound) by rejection; bound >= 1.
  std::uint64_t below(std::uint64_t bound) noexcept;
  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept;
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
  /// Standard normal via Box-Muller.
  double normal() noexcept;

 private:
  std::uint64_t state_;
};

/// FNV-1a 64-bit, used to derive per-name sub-streams from a seed.
std::uint64_t fnv1a64(std::string_view s) noexcept;

/// Fisher-Yates shuffle driven by SplitMix64.
template <class T>
void shuffle(std::vector<T>& v, SplitMix64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.below(i));
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace fpp
