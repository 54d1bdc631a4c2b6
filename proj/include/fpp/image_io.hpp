#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "fpp/raster.hpp"

namespace fpp {

enum class ImageFormat { PNG, PPM, PGM };

using Bytes = std::vector<std::uint8_t>;

/// Sniffs the magic bytes; nullopt when the buffer is none of the three.
std::optional<ImageFormat> detect_format(std::span<const std::uint8_t> bytes);
std::optional<ImageFormat> format_from_extension(const std::filesystem::path& p);

Raster8 decode_image(std::span<const std::uint8_t> bytes, ImageFormat format);
Bytes encode_image(const Raster8& r, ImageFormat format);

Bytes read_file(const std::filesystem::path& p);
void write_file(const std::filesystem::path& p, std::span<const std::uint8_t> bytes);

/// Reads and decodes by content sniffing.
Raster8 load_image(const std::filesystem::path& p);
/// Encodes by extension (.png/.ppm/.pgm).
void save_image(const std::filesystem::path& p, const Raster8& r);

}  // namespace fpp
