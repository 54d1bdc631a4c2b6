#pragma once

// Data-parallel inner loops. Every kernel has a serial reference in
// fpp::kernels::serial and an OpenMP version in fpp::kernels::omp with
// bit-identical output; the public operations call the OpenMP versions.

#include <array>
#include <cstdint>
#include <span>

namespace fpp::kernels {

using Histogram = std::array<std::uint64_t, 256>;

/// Per-pixel 3-channel mapping; `fn(const uint8_t* in, uint8_t* out)`.
using PixelFn = void (*)(const std::uint8_t* in, std::uint8_t* out);

struct ResizeArgs {
  const std::uint8_t* src;
  int src_w, src_h;
  std::uint8_t* dst;
  int dst_w, dst_h;
  int channels;
};

/// Separable blur with replicate padding. `taps` has odd length.
struct BlurArgs {
  const double* src;
  double* dst;
  double* scratch;  // width * height
  int width, height;
  std::span<const double> taps;
};

/// Softmax-regression gradient over a batch. Row-major `features`
/// (batch x dim), `probs` (batch x classes) already computed; writes the
/// batch-mean gradient into `grad_w` (classes x dim) and `grad_b`.
struct SoftmaxGradArgs {
  const float* features;
  const int* labels;
  const double* probs;
  int batch, dim, classes;
  double* grad_w;
  double* grad_b;
};

namespace serial {
void map_pixels3(std::span<const std::uint8_t> in, std::span<std::uint8_t> out, PixelFn fn);
Histogram histogram(std::span<const std::uint8_t> samples, int stride = 1, int offset = 0);
void apply_lut(std::span<std::uint8_t> samples, const std::array<std::uint8_t, 256>& lut, int stride = 1,
               int offset = 0);
void resize_bilinear(const ResizeArgs& a);
void blur(const BlurArgs& a);
void softmax_grad(const SoftmaxGradArgs& a);
}  // namespace serial

namespace omp {
void map_pixels3(std::span<const std::uint8_t> in, std::span<std::uint8_t> out, PixelFn fn);
Histogram histogram(std::span<const std::uint8_t> samples, int stride = 1, int offset = 0);
void apply_lut(std::span<std::uint8_t> samples, const std::array<std::uint8_t, 256>& lut, int stride = 1,
               int offset = 0);
void resize_bilinear(const ResizeArgs& a);
void blur(const BlurArgs& a);
void softmax_grad(const SoftmaxGradArgs& a);
}  // namespace omp

/// Sets the OpenMP team size used by the omp kernels (<= 0: leave default).
void set_thread_count(int n);
int thread_count();

}  // namespace fpp::kernels
