#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace fpp {

enum class ColorSpace { RGB, GRAY, HSV8, LAB8, YCBCR8, QUANT };

enum class QuantMode { FULL, PLANE };

/// Color-space tag carried by every raster. `mode` and `levels` are only
/// meaningful when `space == ColorSpace::QUANT`.
struct ColorTag {
  ColorSpace space = ColorSpace::RGB;
  QuantMode mode = QuantMode::FULL;
  int levels = 0;

  static ColorTag quant(QuantMode m, int l) { return {ColorSpace::QUANT, m, l}; }

  friend bool operator==(const ColorTag&, const ColorTag&) = default;
};

std::string to_string(const ColorTag& tag);

/// 8-bit interleaved image, row-major, `channels` samples per pixel.
class Raster8 {
 public:
  Raster8() = default;
  Raster8(int width, int height, int channels, ColorTag tag = {});
  Raster8(int width, int height, int channels, std::vector<std::uint8_t> data, ColorTag tag = {});

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  int channels() const noexcept { return channels_; }
  std::size_t pixel_count() const noexcept { return std::size_t(width_) * std::size_t(height_); }
  bool empty() const noexcept { return data_.empty(); }

  const ColorTag& tag() const noexcept { return tag_; }
  void set_tag(ColorTag tag) noexcept { tag_ = tag; }

  std::span<std::uint8_t> data() noexcept { return data_; }
  std::span<const std::uint8_t> data() const noexcept { return data_; }

  std::uint8_t& at(int x, int y, int c) noexcept {
    return data_[(std::size_t(y) * std::size_t(width_) + std::size_t(x)) * std::size_t(channels_) + std::size_t(c)];
  }
  std::uint8_t at(int x, int y, int c) const noexcept {
    return data_[(std::size_t(y) * std::size_t(width_) + std::size_t(x)) * std::size_t(channels_) + std::size_t(c)];
  }

  /// Copy of one channel as a contiguous plane.
  std::vector<std::uint8_t> plane(int c) const;
  void set_plane(int c, std::span<const std::uint8_t> values);

  friend bool operator==(const Raster8&, const Raster8&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  int channels_ = 0;
  std::vector<std::uint8_t> data_;
  ColorTag tag_{};
};

/// Planar float image, channel-major.
class TensorF32 {
 public:
  TensorF32() = default;
  TensorF32(int channels, int height, int width);
  TensorF32(int channels, int height, int width, std::vector<float> data);

  int channels() const noexcept { return channels_; }
  int height() const noexcept { return height_; }
  int width() const noexcept { return width_; }
  std::size_t plane_size() const noexcept { return std::size_t(height_) * std::size_t(width_); }
  std::size_t size() const noexcept { return data_.size(); }

  std::span<float> data() noexcept { return data_; }
  std::span<const float> data() const noexcept { return data_; }
  std::span<float> plane(int c) noexcept { return {data_.data() + std::size_t(c) * plane_size(), plane_size()}; }
  std::span<const float> plane(int c) const noexcept {
    return {data_.data() + std::size_t(c) * plane_size(), plane_size()};
  }

  float& at(int c, int y, int x) noexcept { return data_[std::size_t(c) * plane_size() + std::size_t(y) * std::size_t(width_) + std::size_t(x)]; }
  float at(int c, int y, int x) const noexcept { return data_[std::size_t(c) * plane_size() + std::size_t(y) * std::size_t(width_) + std::size_t(x)]; }

  bool all_finite() const noexcept;

  friend bool operator==(const TensorF32&, const TensorF32&) = default;

 private:
  int channels_ = 0;
  int height_ = 0;
  int width_ = 0;
  std::vector<float> data_;
};

/// Bilinear resampling with half-pixel-centred sampling; the tag is kept.
Raster8 resize_bilinear(const Raster8& r, int target_w, int target_h);

/// sample / 255, planar.
TensorF32 to_unit_tensor(const Raster8& r);

}  // namespace fpp
