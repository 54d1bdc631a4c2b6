#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "fpp/raster.hpp"

namespace fpp {

struct Histogram256 {
  std::array<std::uint64_t, 256> counts{};

  std::uint64_t total() const noexcept;
  int distinct() const noexcept;

  Histogram256& operator+=(const Histogram256& o) noexcept;
  friend Histogram256 operator+(Histogram256 a, const Histogram256& b) noexcept { return a += b; }
  friend bool operator==(const Histogram256&, const Histogram256&) = default;
};

Histogram256 histogram256(std::span<const std::uint8_t> samples);

/// Strictly increasing thresholds in [0,254]. With L thresholds the grey
/// axis splits into L+1 classes {v<=t1}, {t1<v<=t2}, ..., {v>tL}.
struct ThresholdVector {
  std::vector<int> thresholds;

  int levels() const noexcept { return static_cast<int>(thresholds.size()); }
  bool valid() const noexcept;
  /// Index of the class containing grey value v.
  int class_of(int v) const noexcept;

  friend bool operator==(const ThresholdVector&, const ThresholdVector&) = default;
};

inline constexpr int kMaxLevels = 254;

/// Unnormalized between-class score: sum over classes of S_k^2 / W_k with
/// W_k the class count and S_k its first moment; empty classes add 0.
/// Terms are summed from the last class to the first. For a fixed
/// histogram this differs from sum_k w_k (mu_k - mu_T)^2 by a positive
/// scale and a constant, so both have the same maximizers.
double between_class_score(const Histogram256& h, const ThresholdVector& t);

/// sum_k w_k (mu_k - mu_T)^2 with probability masses w_k.
double between_class_variance(const Histogram256& h, const ThresholdVector& t);

/// Multilevel Otsu with `levels` thresholds. Exact maximization of
/// between_class_score by dynamic programming over class intervals,
/// O(levels * 256^2). Ties resolve to the lexicographically smallest
/// vector. A histogram with a single occupied bin yields evenly spaced
/// thresholds.
ThresholdVector otsu_multilevel(const Histogram256& h, int levels);

/// Evenly spaced vector used for single-valued histograms.
ThresholdVector evenly_spaced_thresholds(int levels);

/// One output value per class: rounded class mean, or the interval
/// midpoint when the class is empty. Non-decreasing.
std::vector<std::uint8_t> representatives(const Histogram256& h, const ThresholdVector& t);

std::array<std::uint8_t, 256> quantization_lut(const ThresholdVector& t, std::span<const std::uint8_t> reps);

struct QuantizeResult {
  Raster8 image;
  Raster8 class_index;  // per-sample class number, same layout as image
  std::vector<ThresholdVector> thresholds;                // 1 (FULL) or one per channel (PLANE)
  std::vector<std::vector<std::uint8_t>> representatives; // matches thresholds
};

QuantizeResult quantize_detailed(const Raster8& r, QuantMode mode, int levels);

/// One threshold vector from the histogram pooled over every channel.
Raster8 quantize_full(const Raster8& r, int levels);
/// Independent threshold vector per channel; requires 3 channels.
Raster8 quantize_plane(const Raster8& r, int levels);

}  // namespace fpp
