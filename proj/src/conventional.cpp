#include "fpp/conventional.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fpp/error.hpp"

namespace fpp {

Raster8 translate(const Raster8& r, int dx, int dy) {
  Raster8 out(r.width(), r.height(), r.channels(), r.tag());
  const int nc = r.channels();
#pragma omp parallel for schedule(static)
  for (int y = 0; y < r.height(); ++y) {
    const int sy = std::clamp(y - dy, 0, r.height() - 1);
    for (int x = 0; x < r.width(); ++x) {
      const int sx = std::clamp(x - dx, 0, r.width() - 1);
      for (int c = 0; c < nc; ++c) out.at(x, y, c) = r.at(sx, sy, c);
    }
  }
  return out;
}

std::array<Raster8, 4> translate_augment(const Raster8& r, int shift) {
  if (r.width() <= shift || r.height() <= shift)
    throw Error(Errc::TooSmall, "translation by " + std::to_string(shift) + " needs width and height > " +
                                    std::to_string(shift));
  return {translate(r, shift, 0), translate(r, -shift, 0), translate(r, 0, shift), translate(r, 0, -shift)};
}

StandardizationStats compute_stats(std::span<const TensorF32* const> tensors) {
  if (tensors.empty()) throw Error(Errc::EmptyTrainingSet, "no training tensors");
  const int nc = tensors.front()->channels();
  for (const auto* t : tensors)
    if (t->channels() != nc) throw Error(Errc::ChannelMismatch, "training tensors disagree on channel count");

  StandardizationStats s{std::vector<double>(std::size_t(nc), 0.0), std::vector<double>(std::size_t(nc), 0.0)};
  for (int c = 0; c < nc; ++c) {
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto* t : tensors) {
      for (float v : t->plane(c)) sum += v;
      n += t->plane_size();
    }
    const double mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (const auto* t : tensors)
      for (float v : t->plane(c)) ss += (v - mean) * (v - mean);
    s.mean[std::size_t(c)] = mean;
    s.std[std::size_t(c)] = std::max(std::sqrt(ss / static_cast<double>(n)), kStdFloor);
  }
  return s;
}

StandardizationStats compute_stats(std::span<const TensorF32> tensors) {
  std::vector<const TensorF32*> ptrs;
  ptrs.reserve(tensors.size());
  for (const auto& t : tensors) ptrs.push_back(&t);
  return compute_stats(ptrs);
}

TensorF32 standardize(const TensorF32& t, const StandardizationStats& s) {
  if (std::size_t(t.channels()) != s.mean.size() || s.mean.size() != s.std.size())
    throw Error(Errc::ChannelMismatch, "tensor has " + std::to_string(t.channels()) + " channels, stats have " +
                                           std::to_string(s.mean.size()));
  TensorF32 out(t.channels(), t.height(), t.width());
  for (int c = 0; c < t.channels(); ++c) {
    const double m = s.mean[std::size_t(c)], sd = s.std[std::size_t(c)];
    auto src = t.plane(c);
    auto dst = out.plane(c);
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] = static_cast<float>((src[i] - m) / sd);
  }
  return out;
}

}  // namespace fpp
