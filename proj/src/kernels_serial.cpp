#include "kernels_detail.hpp"

namespace fpp::kernels::serial {

void map_pixels3(std::span<const std::uint8_t> in, std::span<std::uint8_t> out, PixelFn fn) {
  const std::size_t n = in.size() / 3;
  for (std::size_t i = 0; i < n; ++i) fn(in.data() + 3 * i, out.data() + 3 * i);
}

Histogram histogram(std::span<const std::uint8_t> samples, int stride, int offset) {
  Histogram h{};
  for (std::size_t i = std::size_t(offset); i < samples.size(); i += std::size_t(stride)) ++h[samples[i]];
  return h;
}

void apply_lut(std::span<std::uint8_t> samples, const std::array<std::uint8_t, 256>& lut, int stride, int offset) {
  for (std::size_t i = std::size_t(offset); i < samples.size(); i += std::size_t(stride)) samples[i] = lut[samples[i]];
}

void resize_bilinear(const ResizeArgs& a) {
  for (int y = 0; y < a.dst_h; ++y) detail::resize_row(a, y);
}

void blur(const BlurArgs& a) {
  for (int y = 0; y < a.height; ++y) detail::blur_row_h(a, y);
  for (int y = 0; y < a.height; ++y) detail::blur_row_v(a, y);
}

void softmax_grad(const SoftmaxGradArgs& a) {
  for (int k = 0; k < a.classes; ++k) detail::softmax_grad_class(a, k);
}

}  // namespace fpp::kernels::serial
