#include "fpp/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cstring>
#include <fstream>
#include <string>

#include "fpp/error.hpp"

namespace fpp {

namespace {

bool starts_with(std::span<const std::uint8_t> b, std::string_view magic) {
  return b.size() >= magic.size() && std::memcmp(b.data(), magic.data(), magic.size()) == 0;
}

// --- PNM --------------------------------------------------------------------

class PnmHeaderReader {
 public:
  explicit PnmHeaderReader(std::span<const std::uint8_t> b) : b_(b), pos_(2) {}

  long next_int() {
    skip_space_and_comments();
    if (pos_ >= b_.size() || !std::isdigit(b_[pos_])) throw Error(Errc::MalformedFile, "PNM header: expected integer");
    long v = 0;
    while (pos_ < b_.size() && std::isdigit(b_[pos_])) {
      v = v * 10 + (b_[pos_++] - '0');
      if (v > 1'000'000'000L) throw Error(Errc::MalformedFile, "PNM header: integer too large");
    }
    return v;
  }

  // exactly one whitespace byte separates maxval from the raster
  std::size_t payload_offset() {
    if (pos_ >= b_.size() || !std::isspace(b_[pos_])) throw Error(Errc::MalformedFile, "PNM header: missing separator");
    return pos_ + 1;
  }

 private:
  void skip_space_and_comments() {
    while (pos_ < b_.size()) {
      if (b_[pos_] == '#') {
        while (pos_ < b_.size() && b_[pos_] != '\n') ++pos_;
      } else if (std::isspace(b_[pos_])) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::span<const std::uint8_t> b_;
  std::size_t pos_;
};

Raster8 decode_pnm(std::span<const std::uint8_t> bytes, int channels) {
  const char* magic = channels == 3 ? "P6" : "P5";
  if (!starts_with(bytes, magic)) throw Error(Errc::MalformedFile, std::string("expected ") + magic + " magic");
  PnmHeaderReader rd(bytes);
  const long w = rd.next_int();
  const long h = rd.next_int();
  const long maxval = rd.next_int();
  if (w < 1 || h < 1) throw Error(Errc::MalformedFile, "PNM header: zero dimension");
  if (maxval < 1 || maxval > 65535) throw Error(Errc::MalformedFile, "PNM header: invalid maxval");
  if (maxval != 255) throw Error(Errc::UnsupportedDepth, "PNM maxval " + std::to_string(maxval) + " (only 255 supported)");
  const std::size_t off = rd.payload_offset();
  const std::size_t need = std::size_t(w) * std::size_t(h) * std::size_t(channels);
  if (bytes.size() - std::min(off, bytes.size()) < need) throw Error(Errc::MalformedFile, "PNM payload truncated");
  std::vector<std::uint8_t> data(bytes.begin() + off, bytes.begin() + off + need);
  return Raster8(int(w), int(h), channels, std::move(data), {channels == 3 ? ColorSpace::RGB : ColorSpace::GRAY});
}

Bytes encode_pnm(const Raster8& r) {
  const std::string header = std::string(r.channels() == 3 ? "P6" : "P5") + "\n" + std::to_string(r.width()) + " " +
                             std::to_string(r.height()) + "\n255\n";
  Bytes out(header.begin(), header.end());
  out.insert(out.end(), r.data().begin(), r.data().end());
  return out;
}

// --- PNG (libpng simplified API) --------------------------------------------

struct PngImage {
  png_image img{};
  PngImage() {
    img.version = PNG_IMAGE_VERSION;
  }
  ~PngImage() { png_image_free(&img); }
  PngImage(const PngImage&) = delete;
  PngImage& operator=(const PngImage&) = delete;
};

Raster8 decode_png(std::span<const std::uint8_t> bytes) {
  PngImage p;
  if (!png_image_begin_read_from_memory(&p.img, bytes.data(), bytes.size()))
    throw Error(Errc::MalformedFile, std::string("PNG: ") + p.img.message);
  if (p.img.format & PNG_FORMAT_FLAG_LINEAR) throw Error(Errc::UnsupportedDepth, "PNG: 16-bit samples");
  const bool color = (p.img.format & PNG_FORMAT_FLAG_COLOR) != 0;
  p.img.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  const int channels = color ? 3 : 1;
  std::vector<std::uint8_t> data(PNG_IMAGE_SIZE(p.img));
  if (!png_image_finish_read(&p.img, nullptr, data.data(), 0, nullptr))
    throw Error(Errc::MalformedFile, std::string("PNG: ") + p.img.message);
  return Raster8(int(p.img.width), int(p.img.height), channels, std::move(data),
                 {color ? ColorSpace::RGB : ColorSpace::GRAY});
}

Bytes encode_png(const Raster8& r) {
  PngImage p;
  p.img.width = png_uint_32(r.width());
  p.img.height = png_uint_32(r.height());
  p.img.format = r.channels() == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&p.img, nullptr, &size, 0, r.data().data(), 0, nullptr))
    throw Error(Errc::IncompatibleFormat, std::string("PNG encode: ") + p.img.message);
  Bytes out(size);
  if (!png_image_write_to_memory(&p.img, out.data(), &size, 0, r.data().data(), 0, nullptr))
    throw Error(Errc::IncompatibleFormat, std::string("PNG encode: ") + p.img.message);
  out.resize(size);
  return out;
}

}  // namespace

std::optional<ImageFormat> detect_format(std::span<const std::uint8_t> bytes) {
  if (starts_with(bytes, "\x89PNG\r\n\x1a\n")) return ImageFormat::PNG;
  if (starts_with(bytes, "P6")) return ImageFormat::PPM;
  if (starts_with(bytes, "P5")) return ImageFormat::PGM;
  return std::nullopt;
}

std::optional<ImageFormat> format_from_extension(const std::filesystem::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return char(std::tolower(c)); });
  if (ext == ".png") return ImageFormat::PNG;
  if (ext == ".ppm") return ImageFormat::PPM;
  if (ext == ".pgm") return ImageFormat::PGM;
  return std::nullopt;
}

Raster8 decode_image(std::span<const std::uint8_t> bytes, ImageFormat format) {
  switch (format) {
    case ImageFormat::PNG: return decode_png(bytes);
    case ImageFormat::PPM: return decode_pnm(bytes, 3);
    case ImageFormat::PGM: return decode_pnm(bytes, 1);
  }
  throw Error(Errc::MalformedFile, "unknown format");
}

Bytes encode_image(const Raster8& r, ImageFormat format) {
  if (r.empty()) throw Error(Errc::IncompatibleFormat, "empty raster");
  switch (format) {
    case ImageFormat::PNG: return encode_png(r);
    case ImageFormat::PPM:
      if (r.channels() != 3) throw Error(Errc::IncompatibleFormat, "PPM requires 3 channels");
      return encode_pnm(r);
    case ImageFormat::PGM:
      if (r.channels() != 1) throw Error(Errc::IncompatibleFormat, "PGM requires 1 channel");
      return encode_pnm(r);
  }
  throw Error(Errc::IncompatibleFormat, "unknown format");
}

Bytes read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(Errc::UnreadablePath, p.string());
  return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::filesystem::path& p, std::span<const std::uint8_t> bytes) {
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error(Errc::UnreadablePath, "cannot write " + p.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
  if (!out) throw Error(Errc::UnreadablePath, "write failed: " + p.string());
}

Raster8 load_image(const std::filesystem::path& p) {
  const Bytes bytes = read_file(p);
  const auto fmt = detect_format(bytes);
  if (!fmt) throw Error(Errc::MalformedFile, "unrecognised image format: " + p.string());
  try {
    return decode_image(bytes, *fmt);
  } catch (const Error& e) {
    throw Error(e.code(), p.string() + ": " + e.what());
  }
}

void save_image(const std::filesystem::path& p, const Raster8& r) {
  const auto fmt = format_from_extension(p);
  if (!fmt) throw Error(Errc::IncompatibleFormat, "unknown image extension: " + p.string());
  write_file(p, encode_image(r, *fmt));
}

}  // namespace fpp
