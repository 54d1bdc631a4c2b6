#include "fpp/analysis.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "fpp/error.hpp"

namespace fpp {

namespace {

// Calls fn(a, b) for every unordered neighbouring pair exactly once.
template <class Fn>
std::uint64_t for_each_pair(const ChannelView& ch, Connectivity conn, Fn&& fn) {
  if (ch.width < 1 || ch.height < 1 || (ch.width == 1 && ch.height == 1))
    throw Error(Errc::DegenerateGeometry, "neighbour metrics need at least two pixels");
  const int w = ch.width, h = ch.height;
  auto at = [&](int x, int y) { return ch.values[std::size_t(y) * std::size_t(w) + std::size_t(x)]; };
  std::uint64_t pairs = 0;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (x + 1 < w) fn(at(x, y), at(x + 1, y)), ++pairs;
      if (y + 1 < h) fn(at(x, y), at(x, y + 1)), ++pairs;
      if (conn == Connectivity::Eight && x + 1 < w && y + 1 < h) {
        fn(at(x, y), at(x + 1, y + 1)), ++pairs;
        fn(at(x + 1, y), at(x, y + 1)), ++pairs;
      }
    }
  }
  return pairs;
}

}  // namespace

double equal_neighbor_fraction(const ChannelView& ch, Connectivity conn) {
  std::uint64_t equal = 0;
  const auto pairs = for_each_pair(ch, conn, [&](std::uint8_t a, std::uint8_t b) { equal += a == b; });
  return static_cast<double>(equal) / static_cast<double>(pairs);
}

double glcm_homogeneity(const ChannelView& ch, Connectivity conn) {
  // counts per |a-b| so the sum is order-independent
  std::array<std::uint64_t, 256> by_gap{};
  const auto pairs = for_each_pair(ch, conn, [&](std::uint8_t a, std::uint8_t b) { ++by_gap[std::size_t(std::abs(a - b))]; });
  double acc = 0.0;
  for (int d = 0; d < 256; ++d) acc += static_cast<double>(by_gap[std::size_t(d)]) / (1.0 + d);
  return acc / static_cast<double>(pairs);
}

int ceil_log2(int n) noexcept {
  int bits = 0;
  while ((1 << bits) < n) ++bits;
  return bits;
}

LevelStats level_stats(std::span<const std::uint8_t> values) {
  std::array<std::uint64_t, 256> hist{};
  for (auto v : values) ++hist[v];
  LevelStats s;
  const double n = static_cast<double>(values.size());
  for (auto c : hist) {
    if (c == 0) continue;
    ++s.distinct_levels;
    const double p = static_cast<double>(c) / n;
    s.entropy_bits -= p * std::log2(p);
  }
  s.effective_bits = ceil_log2(s.distinct_levels);
  if (s.entropy_bits < 0.0) s.entropy_bits = 0.0;  // -0.0 for a single level
  return s;
}

HomogeneityReport analyze_raster(const Raster8& r, Connectivity conn) {
  HomogeneityReport rep;
  for (int c = 0; c < r.channels(); ++c) {
    const auto plane = r.plane(c);
    const ChannelView view{plane, r.width(), r.height()};
    rep.equal_neighbor_fraction.push_back(equal_neighbor_fraction(view, conn));
    rep.glcm_homogeneity.push_back(glcm_homogeneity(view, conn));
    const auto ls = level_stats(plane);
    rep.distinct_levels.push_back(ls.distinct_levels);
    rep.effective_bits.push_back(ls.effective_bits);
    rep.entropy_bits.push_back(ls.entropy_bits);
  }
  return rep;
}

std::string homogeneity_csv_header() { return "image,variant,channel,metric,value\n"; }

std::string homogeneity_csv_rows(const std::string& image, const std::string& variant, const HomogeneityReport& rep) {
  std::string out;
  char buf[64];
  auto row = [&](std::size_t c, const char* metric, double v, bool integral) {
    std::snprintf(buf, sizeof buf, integral ? "%.0f" : "%.6f", v);
    out += image + "," + variant + "," + std::to_string(c) + "," + metric + "," + buf + "\n";
  };
  for (std::size_t c = 0; c < rep.distinct_levels.size(); ++c) {
    row(c, "equal_neighbor_fraction", rep.equal_neighbor_fraction[c], false);
    row(c, "glcm_homogeneity", rep.glcm_homogeneity[c], false);
    row(c, "distinct_levels", rep.distinct_levels[c], true);
    row(c, "effective_bits", rep.effective_bits[c], true);
    row(c, "entropy_bits", rep.entropy_bits[c], false);
  }
  return out;
}

}  // namespace fpp
