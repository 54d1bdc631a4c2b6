#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "fpp/raster.hpp"

namespace fpp {

// FPP1 container:
//   bytes 0..3   "FPP1"
//   bytes 4..15  channels, height, width as uint32 little-endian
//   then         channels*height*width float32 little-endian, channel-major
inline constexpr std::size_t kTensorHeaderBytes = 16;

void write_tensor(const TensorF32& t, std::ostream& out);
TensorF32 read_tensor(std::istream& in);

std::vector<std::uint8_t> tensor_to_bytes(const TensorF32& t);
TensorF32 tensor_from_bytes(std::span<const std::uint8_t> bytes);

void save_tensor(const std::filesystem::path& p, const TensorF32& t);
TensorF32 load_tensor(const std::filesystem::path& p);

}  // namespace fpp
