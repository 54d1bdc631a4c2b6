#include <omp.h>

#include <vector>

#include "kernels_detail.hpp"

namespace fpp::kernels {

void set_thread_count(int n) {
  if (n > 0) omp_set_num_threads(n);
}

int thread_count() { return omp_get_max_threads(); }

namespace omp {

void map_pixels3(std::span<const std::uint8_t> in, std::span<std::uint8_t> out, PixelFn fn) {
  const auto n = static_cast<std::ptrdiff_t>(in.size() / 3);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) fn(in.data() + 3 * i, out.data() + 3 * i);
}

Histogram histogram(std::span<const std::uint8_t> samples, int stride, int offset) {
  Histogram total{};
  const auto count = samples.size() > std::size_t(offset)
                         ? static_cast<std::ptrdiff_t>((samples.size() - std::size_t(offset) + stride - 1) / stride)
                         : 0;
#pragma omp parallel
  {
    Histogram local{};
#pragma omp for schedule(static) nowait
    for (std::ptrdiff_t i = 0; i < count; ++i) ++local[samples[std::size_t(offset) + std::size_t(i) * stride]];
    // integer counts: merge order does not affect the result
#pragma omp critical
    for (int v = 0; v < 256; ++v) total[v] += local[v];
  }
  return total;
}

void apply_lut(std::span<std::uint8_t> samples, const std::array<std::uint8_t, 256>& lut, int stride, int offset) {
  const auto count = samples.size() > std::size_t(offset)
                         ? static_cast<std::ptrdiff_t>((samples.size() - std::size_t(offset) + stride - 1) / stride)
                         : 0;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    auto& s = samples[std::size_t(offset) + std::size_t(i) * stride];
    s = lut[s];
  }
}

void resize_bilinear(const ResizeArgs& a) {
#pragma omp parallel for schedule(static)
  for (int y = 0; y < a.dst_h; ++y) detail::resize_row(a, y);
}

void blur(const BlurArgs& a) {
#pragma omp parallel
  {
#pragma omp for schedule(static)
    for (int y = 0; y < a.height; ++y) detail::blur_row_h(a, y);
#pragma omp for schedule(static)
    for (int y = 0; y < a.height; ++y) detail::blur_row_v(a, y);
  }
}

void softmax_grad(const SoftmaxGradArgs& a) {
#pragma omp parallel for schedule(static)
  for (int k = 0; k < a.classes; ++k) detail::softmax_grad_class(a, k);
}

}  // namespace omp
}  // namespace fpp::kernels
