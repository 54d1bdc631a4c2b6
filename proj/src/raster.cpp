#include "fpp/raster.hpp"

#include <cmath>

#include "fpp/error.hpp"
#include "fpp/kernels.hpp"

namespace fpp {

std::string to_string(const ColorTag& tag) {
  switch (tag.space) {
    case ColorSpace::RGB: return "RGB";
    case ColorSpace::GRAY: return "GRAY";
    case ColorSpace::HSV8: return "HSV8";
    case ColorSpace::LAB8: return "LAB8";
    case ColorSpace::YCBCR8: return "YCBCR8";
    case ColorSpace::QUANT:
      return std::string("QUANT(") + (tag.mode == QuantMode::FULL ? "FULL" : "PLANE") + "," +
             std::to_string(tag.levels) + ")";
  }
  return "?";
}

namespace {
void check_dims(int width, int height, int channels) {
  if (width < 1 || height < 1) throw Error(Errc::InvalidParams, "raster dimensions must be >= 1");
  if (channels != 1 && channels != 3) throw Error(Errc::WrongChannelCount, "raster must have 1 or 3 channels");
}
}  // namespace

namespace {

// A single-channel raster cannot be RGB; the default tag becomes GRAY.
ColorTag default_tag(int channels, ColorTag tag) {
  if (channels == 1 && tag.space == ColorSpace::RGB) tag.space = ColorSpace::GRAY;
  return tag;
}

}  // namespace

Raster8::Raster8(int width, int height, int channels, ColorTag tag)
    : width_(width), height_(height), channels_(channels), tag_(default_tag(channels, tag)) {
  check_dims(width, height, channels);
  data_.assign(std::size_t(width) * std::size_t(height) * std::size_t(channels), 0);
}

Raster8::Raster8(int width, int height, int channels, std::vector<std::uint8_t> data, ColorTag tag)
    : width_(width), height_(height), channels_(channels), data_(std::move(data)), tag_(default_tag(channels, tag)) {
  check_dims(width, height, channels);
  if (data_.size() != std::size_t(width) * std::size_t(height) * std::size_t(channels))
    throw Error(Errc::InvalidParams, "raster data length does not match width*height*channels");
}

std::vector<std::uint8_t> Raster8::plane(int c) const {
  std::vector<std::uint8_t> out(pixel_count());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = data_[i * std::size_t(channels_) + std::size_t(c)];
  return out;
}

void Raster8::set_plane(int c, std::span<const std::uint8_t> values) {
  for (std::size_t i = 0; i < values.size(); ++i) data_[i * std::size_t(channels_) + std::size_t(c)] = values[i];
}

TensorF32::TensorF32(int channels, int height, int width)
    : channels_(channels), height_(height), width_(width),
      data_(std::size_t(channels) * std::size_t(height) * std::size_t(width), 0.0f) {
  if (channels < 1 || height < 1 || width < 1) throw Error(Errc::InvalidParams, "tensor dimensions must be >= 1");
}

TensorF32::TensorF32(int channels, int height, int width, std::vector<float> data)
    : channels_(channels), height_(height), width_(width), data_(std::move(data)) {
  if (channels < 1 || height < 1 || width < 1) throw Error(Errc::InvalidParams, "tensor dimensions must be >= 1");
  if (data_.size() != std::size_t(channels) * std::size_t(height) * std::size_t(width))
    throw Error(Errc::InvalidParams, "tensor data length does not match channels*height*width");
}

bool TensorF32::all_finite() const noexcept {
  for (float v : data_)
    if (!std::isfinite(v)) return false;
  return true;
}

Raster8 resize_bilinear(const Raster8& r, int target_w, int target_h) {
  if (target_w < 1 || target_h < 1) throw Error(Errc::InvalidParams, "resize target must be >= 1");
  if (target_w == r.width() && target_h == r.height()) return r;
  Raster8 out(target_w, target_h, r.channels(), r.tag());
  kernels::omp::resize_bilinear({r.data().data(), r.width(), r.height(), out.data().data(), target_w, target_h,
                                 r.channels()});
  return out;
}

TensorF32 to_unit_tensor(const Raster8& r) {
  TensorF32 t(r.channels(), r.height(), r.width());
  const auto src = r.data();
  const std::size_t n = r.pixel_count();
  for (int c = 0; c < r.channels(); ++c) {
    auto dst = t.plane(c);
    for (std::size_t i = 0; i < n; ++i) dst[i] = static_cast<float>(src[i * r.channels() + c]) / 255.0f;
  }
  return t;
}

}  // namespace fpp
