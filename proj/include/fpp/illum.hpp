#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "fpp/raster.hpp"

namespace fpp {

/// Per-channel histogram equalization,
///   v' = round((cdf(v) - cdf_min) / (N - cdf_min) * 255),
/// with cdf_min the smallest non-zero cdf value. Constant channels pass
/// through unchanged.
Raster8 hist_equalize(const Raster8& r);

/// The equalization table for one channel's samples (identity when constant).
std::array<std::uint8_t, 256> equalization_lut(std::span<const std::uint8_t> samples, int stride = 1, int offset = 0);

struct LcnParams {
  int window = 9;
  double sigma = 9 / 4.0;
  double eps = 0.01;  // on the [0,1] scale

  static LcnParams with_window(int window) { return {window, window / 4.0, 0.01}; }
  void validate() const;
  friend bool operator==(const LcnParams&, const LcnParams&) = default;
};

/// Unit-sum 1-D Gaussian taps of length p.window.
std::vector<double> gaussian_taps(const LcnParams& p);

/// Continuous-domain response of one plane (row-major, width*height):
/// x~ = x - G*x, y = x~ / max(sqrt(G*x~^2), eps), replicate padding.
std::vector<double> lcn_response(std::span<const double> plane, int width, int height, const LcnParams& p);

/// Per-channel LCN on the [0,1] scale, re-encoded as clamp(round(64*y + 128)).
Raster8 local_contrast_normalize(const Raster8& r, const LcnParams& p = {});

}  // namespace fpp
