#include "fpp/synth.hpp"

#include <array>
#include <cstdio>

#include "fpp/image_io.hpp"
#include "fpp/rng.hpp"
#include "kernels_detail.hpp"

namespace fpp {

namespace {

using Rgb = std::array<double, 3>;

struct FaceLayout {
  Rgb background, skin, hair, eye, mouth;
  double cx, cy, rx, ry;
  double hairline;            // fraction of the oval height covered by hair
  double eye_dy, eye_dx, eye_r;
  double mouth_dy, mouth_w, mouth_h;
};

Rgb random_rgb(SplitMix64& rng, double lo, double hi) {
  return {rng.uniform(lo, hi), rng.uniform(lo, hi), rng.uniform(lo, hi)};
}

FaceLayout class_layout(int class_index, std::uint64_t seed) {
  SplitMix64 rng(seed ^ fnv1a64("class:" + std::to_string(class_index)));
  FaceLayout f;
  f.background = random_rgb(rng, 20, 235);
  f.skin = {rng.uniform(150, 240), rng.uniform(100, 200), rng.uniform(70, 170)};
  f.hair = random_rgb(rng, 10, 120);
  f.eye = random_rgb(rng, 0, 90);
  f.mouth = {rng.uniform(120, 230), rng.uniform(20, 110), rng.uniform(20, 110)};
  f.cx = rng.uniform(0.45, 0.55);
  f.cy = rng.uniform(0.50, 0.60);
  f.rx = rng.uniform(0.24, 0.36);
  f.ry = rng.uniform(0.32, 0.42);
  f.hairline = rng.uniform(0.10, 0.35);
  f.eye_dy = rng.uniform(0.06, 0.15);
  f.eye_dx = rng.uniform(0.08, 0.15);
  f.eye_r = rng.uniform(0.025, 0.05);
  f.mouth_dy = rng.uniform(0.12, 0.22);
  f.mouth_w = rng.uniform(0.05, 0.13);
  f.mouth_h = rng.uniform(0.015, 0.035);
  return f;
}

bool in_ellipse(double u, double v, double cx, double cy, double rx, double ry) {
  const double a = (u - cx) / rx, b = (v - cy) / ry;
  return a * a + b * b <= 1.0;
}

}  // namespace

Raster8 synth_face(int class_index, int sample_index, const SynthOptions& opt) {
  FaceLayout f = class_layout(class_index, opt.seed);
  SplitMix64 rng(opt.seed ^ fnv1a64("sample:" + std::to_string(class_index) + ":" + std::to_string(sample_index)));
  auto jitter = [&](double& v, double amount) { v += rng.uniform(-amount, amount); };
  jitter(f.cx, 0.08);
  jitter(f.cy, 0.08);
  jitter(f.rx, 0.04);
  jitter(f.ry, 0.04);
  jitter(f.hairline, 0.08);
  for (auto& v : f.background) jitter(v, 60.0);
  for (auto& v : f.skin) jitter(v, 25.0);
  jitter(f.eye_dy, 0.01);
  jitter(f.eye_dx, 0.01);
  jitter(f.mouth_dy, 0.015);
  jitter(f.mouth_w, 0.015);
  const double gain = rng.uniform(0.55, 1.45);
  const double gradient = rng.uniform(-0.6, 0.6);
  const double noise = 12.0;

  Raster8 r(opt.size, opt.size, 3);
  for (int y = 0; y < opt.size; ++y) {
    for (int x = 0; x < opt.size; ++x) {
      const double u = (x + 0.5) / opt.size, v = (y + 0.5) / opt.size;
      const Rgb* c = &f.background;
      if (in_ellipse(u, v, f.cx, f.cy, f.rx, f.ry)) {
        c = v < f.cy - f.ry + 2 * f.ry * f.hairline ? &f.hair : &f.skin;
        const double ey = f.cy - f.eye_dy;
        if (in_ellipse(u, v, f.cx - f.eye_dx, ey, f.eye_r, f.eye_r * 0.7) ||
            in_ellipse(u, v, f.cx + f.eye_dx, ey, f.eye_r, f.eye_r * 0.7))
          c = &f.eye;
        if (in_ellipse(u, v, f.cx, f.cy + f.mouth_dy, f.mouth_w, f.mouth_h)) c = &f.mouth;
      }
      const double light = gain * (1.0 + gradient * (u - 0.5));
      for (int ch = 0; ch < 3; ++ch)
        r.at(x, y, ch) = kernels::detail::clamp_round((*c)[std::size_t(ch)] * light + noise * rng.normal());
    }
  }
  return r;
}

void write_synthetic_dataset(const std::filesystem::path& dir, const SynthOptions& opt) {
  char name[64];
  for (int c = 0; c < opt.classes; ++c) {
    std::snprintf(name, sizeof name, "person_%02d", c);
    const auto class_dir = dir / name;
    for (int s = 0; s < opt.per_class; ++s) {
      std::snprintf(name, sizeof name, "img_%03d.png", s);
      save_image(class_dir / name, synth_face(c, s, opt));
    }
  }
}

}  // namespace fpp
