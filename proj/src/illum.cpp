#include "fpp/illum.hpp"

#include <algorithm>
#include <cmath>

#include "fpp/error.hpp"
#include "fpp/kernels.hpp"
#include "kernels_detail.hpp"

namespace fpp {

std::array<std::uint8_t, 256> equalization_lut(std::span<const std::uint8_t> samples, int stride, int offset) {
  const auto hist = kernels::omp::histogram(samples, stride, offset);
  std::array<std::uint8_t, 256> lut{};
  std::uint64_t n = 0, cdf_min = 0;
  for (int v = 0; v < 256; ++v) {
    n += hist[std::size_t(v)];
    if (cdf_min == 0) cdf_min = n;
  }
  if (n == cdf_min) {
    for (int v = 0; v < 256; ++v) lut[std::size_t(v)] = static_cast<std::uint8_t>(v);
    return lut;
  }
  const std::uint64_t den = n - cdf_min;
  std::uint64_t cdf = 0;
  for (int v = 0; v < 256; ++v) {
    cdf += hist[std::size_t(v)];
    if (cdf < cdf_min) continue;  // below the channel minimum; never looked up
    lut[std::size_t(v)] = static_cast<std::uint8_t>(((cdf - cdf_min) * 510 + den) / (2 * den));
  }
  return lut;
}

Raster8 hist_equalize(const Raster8& r) {
  Raster8 out = r;
  const int nc = r.channels();
  for (int c = 0; c < nc; ++c) kernels::omp::apply_lut(out.data(), equalization_lut(r.data(), nc, c), nc, c);
  return out;
}

void LcnParams::validate() const {
  if (window < 3 || window % 2 == 0) throw Error(Errc::InvalidParams, "LCN window must be odd and >= 3");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw Error(Errc::InvalidParams, "LCN sigma must be > 0");
  if (!(eps > 0.0) || !std::isfinite(eps)) throw Error(Errc::InvalidParams, "LCN eps must be > 0");
}

std::vector<double> gaussian_taps(const LcnParams& p) {
  p.validate();
  const int r = p.window / 2;
  std::vector<double> taps(std::size_t(p.window));
  double sum = 0.0;
  for (int k = -r; k <= r; ++k) {
    taps[std::size_t(k + r)] = std::exp(-(k * k) / (2.0 * p.sigma * p.sigma));
    sum += taps[std::size_t(k + r)];
  }
  for (auto& t : taps) t /= sum;
  return taps;
}

std::vector<double> lcn_response(std::span<const double> plane, int width, int height, const LcnParams& p) {
  const auto taps = gaussian_taps(p);
  const std::size_t n = std::size_t(width) * std::size_t(height);
  std::vector<double> mean(n), scratch(n), centred(n), sq(n), var(n);
  kernels::omp::blur({plane.data(), mean.data(), scratch.data(), width, height, taps});
  for (std::size_t i = 0; i < n; ++i) {
    centred[i] = plane[i] - mean[i];
    sq[i] = centred[i] * centred[i];
  }
  kernels::omp::blur({sq.data(), var.data(), scratch.data(), width, height, taps});
  for (std::size_t i = 0; i < n; ++i) centred[i] /= std::max(std::sqrt(var[i]), p.eps);
  return centred;
}

Raster8 local_contrast_normalize(const Raster8& r, const LcnParams& p) {
  p.validate();
  Raster8 out = r;
  const std::size_t n = r.pixel_count();
  std::vector<double> plane(n);
  for (int c = 0; c < r.channels(); ++c) {
    for (std::size_t i = 0; i < n; ++i) plane[i] = r.data()[i * r.channels() + c] / 255.0;
    const auto y = lcn_response(plane, r.width(), r.height(), p);
    for (std::size_t i = 0; i < n; ++i)
      out.data()[i * r.channels() + c] = kernels::detail::clamp_round(y[i] * 64.0 + 128.0);
  }
  return out;
}

}  // namespace fpp
