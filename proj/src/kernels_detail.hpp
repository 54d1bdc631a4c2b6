#pragma once

// Element-level bodies shared by the serial and OpenMP kernels so both
// paths execute the same floating-point operations in the same order.

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "fpp/kernels.hpp"

namespace fpp::kernels::detail {

inline std::uint8_t clamp_round(double v) {
  v = std::floor(v + 0.5);
  return static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0));
}

struct Tap {
  int i0, i1;
  double f;
};

inline Tap sample_coord(int dst, int src_len, int dst_len) {
  double s = (dst + 0.5) * static_cast<double>(src_len) / static_cast<double>(dst_len) - 0.5;
  s = std::clamp(s, 0.0, static_cast<double>(src_len - 1));
  int i0 = static_cast<int>(std::floor(s));
  int i1 = std::min(i0 + 1, src_len - 1);
  return {i0, i1, s - i0};
}

inline void resize_row(const ResizeArgs& a, int y) {
  const Tap ty = sample_coord(y, a.src_h, a.dst_h);
  const std::size_t row0 = std::size_t(ty.i0) * a.src_w * a.channels;
  const std::size_t row1 = std::size_t(ty.i1) * a.src_w * a.channels;
  std::uint8_t* out = a.dst + std::size_t(y) * a.dst_w * a.channels;
  for (int x = 0; x < a.dst_w; ++x) {
    const Tap tx = sample_coord(x, a.src_w, a.dst_w);
    for (int c = 0; c < a.channels; ++c) {
      const double p00 = a.src[row0 + std::size_t(tx.i0) * a.channels + c];
      const double p01 = a.src[row0 + std::size_t(tx.i1) * a.channels + c];
      const double p10 = a.src[row1 + std::size_t(tx.i0) * a.channels + c];
      const double p11 = a.src[row1 + std::size_t(tx.i1) * a.channels + c];
      const double top = p00 + tx.f * (p01 - p00);
      const double bot = p10 + tx.f * (p11 - p10);
      out[std::size_t(x) * a.channels + c] = clamp_round(top + ty.f * (bot - top));
    }
  }
}

inline void blur_row_h(const BlurArgs& a, int y) {
  const int r = static_cast<int>(a.taps.size() / 2);
  const double* in = a.src + std::size_t(y) * a.width;
  double* out = a.scratch + std::size_t(y) * a.width;
  for (int x = 0; x < a.width; ++x) {
    double acc = 0.0;
    for (int k = -r; k <= r; ++k) {
      const int xx = std::clamp(x + k, 0, a.width - 1);
      acc += a.taps[std::size_t(k + r)] * in[xx];
    }
    out[x] = acc;
  }
}

inline void blur_row_v(const BlurArgs& a, int y) {
  const int r = static_cast<int>(a.taps.size() / 2);
  double* out = a.dst + std::size_t(y) * a.width;
  for (int x = 0; x < a.width; ++x) {
    double acc = 0.0;
    for (int k = -r; k <= r; ++k) {
      const int yy = std::clamp(y + k, 0, a.height - 1);
      acc += a.taps[std::size_t(k + r)] * a.scratch[std::size_t(yy) * a.width + x];
    }
    out[x] = acc;
  }
}

inline void softmax_grad_class(const SoftmaxGradArgs& a, int k) {
  double* gw = a.grad_w + std::size_t(k) * a.dim;
  std::fill(gw, gw + a.dim, 0.0);
  double gb = 0.0;
  for (int i = 0; i < a.batch; ++i) {
    const double coef = a.probs[std::size_t(i) * a.classes + k] - (a.labels[i] == k ? 1.0 : 0.0);
    gb += coef;
    const float* x = a.features + std::size_t(i) * a.dim;
    for (int d = 0; d < a.dim; ++d) gw[d] += coef * static_cast<double>(x[d]);
  }
  const double inv = 1.0 / a.batch;
  for (int d = 0; d < a.dim; ++d) gw[d] *= inv;
  a.grad_b[k] = gb * inv;
}

}  // namespace fpp::kernels::detail
