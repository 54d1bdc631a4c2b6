#include "fpp/colorspace.hpp"

#include <algorithm>
#include <cmath>

#include "fpp/error.hpp"
#include "fpp/kernels.hpp"
#include "kernels_detail.hpp"

namespace fpp {

namespace {

using kernels::detail::clamp_round;

constexpr double kKr = 0.299, kKg = 0.587, kKb = 0.114;

// sRGB primaries, D65. The white point is taken as the row sums so that
// RGB white lands exactly on L*=100, a*=b*=0.
constexpr double kM[3][3] = {{0.4124564, 0.3575761, 0.1804375},
                             {0.2126729, 0.7151522, 0.0721750},
                             {0.0193339, 0.1191920, 0.9503041}};
constexpr double kMinv[3][3] = {{3.2404542, -1.5371385, -0.4985314},
                                {-0.9692660, 1.8760108, 0.0415560},
                                {0.0556434, -0.2040259, 1.0572252}};
constexpr double kWhite[3] = {kM[0][0] + kM[0][1] + kM[0][2], kM[1][0] + kM[1][1] + kM[1][2],
                              kM[2][0] + kM[2][1] + kM[2][2]};
constexpr double kDelta = 6.0 / 29.0;

double srgb_to_linear(double c) { return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4); }
double linear_to_srgb(double c) {
  return c <= 0.0031308 ? 12.92 * c : 1.055 * std::pow(c, 1.0 / 2.4) - 0.055;
}
double lab_f(double t) { return t > kDelta * kDelta * kDelta ? std::cbrt(t) : t / (3 * kDelta * kDelta) + 4.0 / 29.0; }
double lab_finv(double t) { return t > kDelta ? t * t * t : 3 * kDelta * kDelta * (t - 4.0 / 29.0); }

void require(const Raster8& r, ColorSpace space) {
  if (r.tag().space != space)
    throw Error(Errc::WrongColorSpace, "expected " + to_string(ColorTag{space}) + ", got " + to_string(r.tag()));
  if (r.channels() != 3) throw Error(Errc::WrongChannelCount, "color conversion needs 3 channels");
}

Raster8 map(const Raster8& r, ColorSpace from, ColorSpace to, kernels::PixelFn fn) {
  require(r, from);
  Raster8 out(r.width(), r.height(), 3, ColorTag{to});
  kernels::omp::map_pixels3(r.data(), out.data(), fn);
  return out;
}

}  // namespace

namespace pixel {

void rgb_to_hsv(const std::uint8_t* in, std::uint8_t* out) {
  // Integer arithmetic so half-way cases round up exactly.
  const int r = in[0], g = in[1], b = in[2];
  const int mx = std::max({r, g, b}), mn = std::min({r, g, b});
  const int c = mx - mn;
  int h = 0;
  if (c > 0) {
    int h6;  // hue in units of 60 degrees, scaled by c
    if (mx == r)
      h6 = g - b < 0 ? g - b + 6 * c : g - b;
    else if (mx == g)
      h6 = b - r + 2 * c;
    else
      h6 = r - g + 4 * c;
    h = (2 * 255 * h6 + 6 * c) / (12 * c);
  }
  out[0] = static_cast<std::uint8_t>(h);
  out[1] = static_cast<std::uint8_t>(mx > 0 ? (2 * 255 * c + mx) / (2 * mx) : 0);
  out[2] = static_cast<std::uint8_t>(mx);
}

void hsv_to_rgb(const std::uint8_t* in, std::uint8_t* out) {
  const double h = std::fmod(in[0] / 255.0 * 360.0, 360.0);
  const double s = in[1] / 255.0, v = in[2] / 255.0;
  const double c = v * s;
  const double hp = h / 60.0;
  const double x = c * (1.0 - std::fabs(std::fmod(hp, 2.0) - 1.0));
  double r = 0, g = 0, b = 0;
  switch (static_cast<int>(hp)) {
    case 0: r = c, g = x; break;
    case 1: r = x, g = c; break;
    case 2: g = c, b = x; break;
    case 3: g = x, b = c; break;
    case 4: r = x, b = c; break;
    default: r = c, b = x; break;
  }
  const double m = v - c;
  out[0] = clamp_round((r + m) * 255.0);
  out[1] = clamp_round((g + m) * 255.0);
  out[2] = clamp_round((b + m) * 255.0);
}

void rgb_to_ycbcr(const std::uint8_t* in, std::uint8_t* out) {
  const double r = in[0], g = in[1], b = in[2];
  const double y = kKr * r + kKg * g + kKb * b;
  out[0] = clamp_round(y);
  out[1] = clamp_round(128.0 + (b - y) * 0.5 / (1.0 - kKb));
  out[2] = clamp_round(128.0 + (r - y) * 0.5 / (1.0 - kKr));
}

void ycbcr_to_rgb(const std::uint8_t* in, std::uint8_t* out) {
  const double y = in[0], cb = in[1] - 128.0, cr = in[2] - 128.0;
  const double r = y + cr * (1.0 - kKr) / 0.5;
  const double b = y + cb * (1.0 - kKb) / 0.5;
  const double g = (y - kKr * r - kKb * b) / kKg;
  out[0] = clamp_round(r);
  out[1] = clamp_round(g);
  out[2] = clamp_round(b);
}

Lab srgb_to_lab(std::uint8_t r8, std::uint8_t g8, std::uint8_t b8) {
  const double rgb[3] = {srgb_to_linear(r8 / 255.0), srgb_to_linear(g8 / 255.0), srgb_to_linear(b8 / 255.0)};
  double f[3];
  for (int i = 0; i < 3; ++i) {
    const double v = kM[i][0] * rgb[0] + kM[i][1] * rgb[1] + kM[i][2] * rgb[2];
    f[i] = lab_f(v / kWhite[i]);
  }
  return {116.0 * f[1] - 16.0, 500.0 * (f[0] - f[1]), 200.0 * (f[1] - f[2])};
}

void rgb_to_lab(const std::uint8_t* in, std::uint8_t* out) {
  const Lab lab = srgb_to_lab(in[0], in[1], in[2]);
  out[0] = clamp_round(lab.l / 100.0 * 255.0);
  out[1] = clamp_round(std::clamp(lab.a, -128.0, 127.0) + 128.0);
  out[2] = clamp_round(std::clamp(lab.b, -128.0, 127.0) + 128.0);
}

void lab_to_rgb(const std::uint8_t* in, std::uint8_t* out) {
  const double l = in[0] / 255.0 * 100.0, a = in[1] - 128.0, b = in[2] - 128.0;
  const double fy = (l + 16.0) / 116.0;
  const double f[3] = {fy + a / 500.0, fy, fy - b / 200.0};
  double xyz[3];
  for (int i = 0; i < 3; ++i) xyz[i] = lab_finv(f[i]) * kWhite[i];
  for (int i = 0; i < 3; ++i) {
    const double lin = kMinv[i][0] * xyz[0] + kMinv[i][1] * xyz[1] + kMinv[i][2] * xyz[2];
    out[i] = clamp_round(linear_to_srgb(std::clamp(lin, 0.0, 1.0)) * 255.0);
  }
}

}  // namespace pixel

Raster8 rgb_to_hsv(const Raster8& r) { return map(r, ColorSpace::RGB, ColorSpace::HSV8, pixel::rgb_to_hsv); }
Raster8 rgb_to_ycbcr(const Raster8& r) { return map(r, ColorSpace::RGB, ColorSpace::YCBCR8, pixel::rgb_to_ycbcr); }
Raster8 rgb_to_lab(const Raster8& r) { return map(r, ColorSpace::RGB, ColorSpace::LAB8, pixel::rgb_to_lab); }
Raster8 hsv_to_rgb(const Raster8& r) { return map(r, ColorSpace::HSV8, ColorSpace::RGB, pixel::hsv_to_rgb); }
Raster8 ycbcr_to_rgb(const Raster8& r) { return map(r, ColorSpace::YCBCR8, ColorSpace::RGB, pixel::ycbcr_to_rgb); }
Raster8 lab_to_rgb(const Raster8& r) { return map(r, ColorSpace::LAB8, ColorSpace::RGB, pixel::lab_to_rgb); }

Raster8 convert_from_rgb(const Raster8& r, ColorSpace target) {
  switch (target) {
    case ColorSpace::RGB: require(r, ColorSpace::RGB); return r;
    case ColorSpace::HSV8: return rgb_to_hsv(r);
    case ColorSpace::YCBCR8: return rgb_to_ycbcr(r);
    case ColorSpace::LAB8: return rgb_to_lab(r);
    default: throw Error(Errc::WrongColorSpace, "no conversion from RGB to " + to_string(ColorTag{target}));
  }
}

}  // namespace fpp
