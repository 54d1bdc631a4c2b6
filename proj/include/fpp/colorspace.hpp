#pragma once

#include <cstdint>

#include "fpp/raster.hpp"

namespace fpp {

// 8-bit encodings:
//   HSV8   H in [0,360) -> round(H/360*255); S,V in [0,1] -> round(x*255)
//   YCBCR8 BT.601 full range, Cb/Cr centred on 128
//   LAB8   sRGB (D65) -> L*a*b*; L -> round(L/100*255), a,b -> round(clamp(x,-128,127)+128)
//
// Only RGB <-> X conversions exist; anything else must pass through RGB.

Raster8 rgb_to_hsv(const Raster8& r);
Raster8 rgb_to_ycbcr(const Raster8& r);
Raster8 rgb_to_lab(const Raster8& r);

Raster8 hsv_to_rgb(const Raster8& r);
Raster8 ycbcr_to_rgb(const Raster8& r);
Raster8 lab_to_rgb(const Raster8& r);

/// Converts an RGB raster to `target` (RGB returns a copy).
Raster8 convert_from_rgb(const Raster8& r, ColorSpace target);

namespace pixel {
void rgb_to_hsv(const std::uint8_t* in, std::uint8_t* out);
void hsv_to_rgb(const std::uint8_t* in, std::uint8_t* out);
void rgb_to_ycbcr(const std::uint8_t* in, std::uint8_t* out);
void ycbcr_to_rgb(const std::uint8_t* in, std::uint8_t* out);
void rgb_to_lab(const std::uint8_t* in, std::uint8_t* out);
void lab_to_rgb(const std::uint8_t* in, std::uint8_t* out);

struct Lab {
  double l, a, b;
};
/// Unquantized L*a*b* of an 8-bit sRGB triple.
Lab srgb_to_lab(std::uint8_t r, std::uint8_t g, std::uint8_t b);
}  // namespace pixel

}  // namespace fpp
