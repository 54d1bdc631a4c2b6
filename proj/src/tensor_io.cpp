#include "fpp/tensor_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "fpp/error.hpp"

namespace fpp {

namespace {

void put_u32(std::ostream& out, std::uint32_t v) {
  const char b[4] = {char(v & 0xff), char((v >> 8) & 0xff), char((v >> 16) & 0xff), char((v >> 24) & 0xff)};
  out.write(b, 4);
}

std::uint32_t get_u32(const unsigned char* b) {
  return std::uint32_t(b[0]) | (std::uint32_t(b[1]) << 8) | (std::uint32_t(b[2]) << 16) | (std::uint32_t(b[3]) << 24);
}

}  // namespace

void write_tensor(const TensorF32& t, std::ostream& out) {
  if (!t.all_finite()) throw Error(Errc::InvalidParams, "tensor contains non-finite values");
  out.write("FPP1", 4);
  put_u32(out, std::uint32_t(t.channels()));
  put_u32(out, std::uint32_t(t.height()));
  put_u32(out, std::uint32_t(t.width()));
  for (float v : t.data()) put_u32(out, std::bit_cast<std::uint32_t>(v));
}

TensorF32 read_tensor(std::istream& in) {
  unsigned char header[kTensorHeaderBytes];
  in.read(reinterpret_cast<char*>(header), 4);
  if (in.gcount() != 4) throw Error(Errc::TruncatedPayload, "tensor header truncated");
  if (std::memcmp(header, "FPP1", 4) != 0) throw Error(Errc::BadMagic, "expected FPP1");
  in.read(reinterpret_cast<char*>(header + 4), 12);
  if (in.gcount() != 12) throw Error(Errc::TruncatedPayload, "tensor header truncated");
  const std::uint32_t c = get_u32(header + 4), h = get_u32(header + 8), w = get_u32(header + 12);
  if (c == 0 || h == 0 || w == 0) throw Error(Errc::TruncatedPayload, "tensor header has zero dimension");
  const std::uint64_t n = std::uint64_t(c) * h * w;
  if (n > (std::uint64_t(1) << 32)) throw Error(Errc::TruncatedPayload, "tensor header dimensions implausible");
  std::vector<unsigned char> raw(n * 4);
  in.read(reinterpret_cast<char*>(raw.data()), std::streamsize(raw.size()));
  if (std::uint64_t(in.gcount()) != raw.size()) throw Error(Errc::TruncatedPayload, "tensor payload truncated");
  std::vector<float> data(n);
  for (std::uint64_t i = 0; i < n; ++i) data[i] = std::bit_cast<float>(get_u32(raw.data() + 4 * i));
  return TensorF32(int(c), int(h), int(w), std::move(data));
}

std::vector<std::uint8_t> tensor_to_bytes(const TensorF32& t) {
  std::ostringstream os(std::ios::binary);
  write_tensor(t, os);
  const std::string s = os.str();
  return {s.begin(), s.end()};
}

TensorF32 tensor_from_bytes(std::span<const std::uint8_t> bytes) {
  std::istringstream is(std::string(bytes.begin(), bytes.end()), std::ios::binary);
  return read_tensor(is);
}

void save_tensor(const std::filesystem::path& p, const TensorF32& t) {
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error(Errc::UnreadablePath, "cannot write " + p.string());
  write_tensor(t, out);
}

TensorF32 load_tensor(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(Errc::UnreadablePath, p.string());
  return read_tensor(in);
}

}  // namespace fpp
