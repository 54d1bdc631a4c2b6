#pragma once

#include <array>
#include <span>
#include <vector>

#include "fpp/raster.hpp"

namespace fpp {

inline constexpr int kTranslatePixels = 30;

/// Four copies shifted by (+d,0), (-d,0), (0,+d), (0,-d), in that order.
/// out(x,y) = in(x-dx, y-dy) with edge replication where that falls outside.
std::array<Raster8, 4> translate_augment(const Raster8& r, int shift = kTranslatePixels);

/// Single shifted copy with edge replication.
Raster8 translate(const Raster8& r, int dx, int dy);

struct StandardizationStats {
  std::vector<double> mean;
  std::vector<double> std;  // floored at kStdFloor
};

inline constexpr double kStdFloor = 1e-6;

/// Per-channel mean and population standard deviation pooled over every
/// sample of every tensor, accumulated in the given order.
StandardizationStats compute_stats(std::span<const TensorF32* const> tensors);
StandardizationStats compute_stats(std::span<const TensorF32> tensors);

/// (x - mean) / std per channel.
TensorF32 standardize(const TensorF32& t, const StandardizationStats& s);

}  // namespace fpp
