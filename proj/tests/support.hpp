#pragma once
// Generators, temp directories and independent reference implementations
// shared by the unit tests and the acceptance runner.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <unistd.h>

#include "fpp/quantize.hpp"
#include "fpp/raster.hpp"
#include "fpp/rng.hpp"
#include "fpp/synth.hpp"

namespace fpptest {

using fpp::Histogram256;
using fpp::Raster8;
using fpp::SplitMix64;

inline int rand_int(SplitMix64& rng, int lo, int hi) {  // inclusive
  return lo + static_cast<int>(rng.below(std::uint64_t(hi - lo + 1)));
}

inline Raster8 random_raster(SplitMix64& rng, int w, int h, int c) {
  Raster8 r(w, h, c);
  for (auto& v : r.data()) v = static_cast<std::uint8_t>(rng.below(256));
  return r;
}

// Sum of a few random Gaussian blobs over a gradient, plus mild noise.
// Large flat-ish regions, closer to photographs than white noise.
inline Raster8 smooth_raster(SplitMix64& rng, int w, int h, int c) {
  Raster8 r(w, h, c);
  const int blobs = rand_int(rng, 2, 6);
  std::vector<std::array<double, 7>> b(static_cast<std::size_t>(blobs));
  for (auto& p : b)
    p = {rng.uniform(0, w), rng.uniform(0, h), rng.uniform(2, w / 2.0 + 2), rng.uniform(-120, 120),
         rng.uniform(-120, 120), rng.uniform(-120, 120), 0};
  const double base[3] = {rng.uniform(40, 215), rng.uniform(40, 215), rng.uniform(40, 215)};
  const double gx = rng.uniform(-1, 1), gy = rng.uniform(-1, 1);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      for (int ch = 0; ch < c; ++ch) {
        double v = base[ch] + gx * x + gy * y + 2.0 * rng.normal();
        for (const auto& p : b) {
          const double dx = x - p[0], dy = y - p[1];
          v += p[3 + ch] * std::exp(-(dx * dx + dy * dy) / (2 * p[2] * p[2]));
        }
        r.at(x, y, ch) = static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
      }
  return r;
}

// Stand-ins for natural photographs: the seeded synthetic face renders.
inline std::vector<Raster8> natural_images(int n, int size = 64) {
  fpp::SynthOptions opt;
  opt.size = size;
  std::vector<Raster8> out;
  for (int i = 0; i < n; ++i) out.push_back(fpp::synth_face(i % 10, i / 10, opt));
  return out;
}

// Random 256-bin histograms of varied shape: dense, sparse, multimodal.
inline Histogram256 random_histogram(SplitMix64& rng) {
  Histogram256 h;
  switch (rng.below(4)) {
    case 0:
      for (auto& c : h.counts) c = rng.below(1000);
      break;
    case 1: {
      const int n = rand_int(rng, 2, 40);
      for (int i = 0; i < n; ++i) h.counts[rng.below(256)] += 1 + rng.below(5000);
      break;
    }
    case 2: {
      const int modes = rand_int(rng, 1, 5);
      for (int m = 0; m < modes; ++m) {
        const double mu = rng.uniform(0, 255), sd = rng.uniform(2, 40), mass = rng.uniform(100, 20000);
        for (int v = 0; v < 256; ++v) h.counts[v] += std::uint64_t(mass * std::exp(-(v - mu) * (v - mu) / (2 * sd * sd)));
      }
      break;
    }
    default:
      for (auto& c : h.counts) c = rng.below(8) == 0 ? rng.below(200) : 0;
      break;
  }
  if (h.total() == 0) h.counts[rng.below(256)] = 1;
  return h;
}

// Histogram supported on at most `max_support` grey values.
inline Histogram256 sparse_histogram(SplitMix64& rng, int max_support) {
  Histogram256 h;
  const int n = rand_int(rng, 1, max_support);
  for (int i = 0; i < n; ++i) h.counts[rng.below(256)] += 1 + rng.below(3000);
  return h;
}

// Brute-force multilevel Otsu. Same objective, sum over classes of
// S^2/W folded from the last class to the first, evaluated for every
// strictly increasing threshold vector in lexicographic order; the first
// maximum wins.
struct BruteOtsu {
  double score = -1;
  std::vector<int> thresholds;
};

class BruteForceOtsu {
 public:
  explicit BruteForceOtsu(const Histogram256& h) {
    std::array<long double, 257> w{}, s{};
    for (int v = 0; v < 256; ++v) {
      w[v + 1] = w[v] + h.counts[v];
      s[v + 1] = s[v] + static_cast<long double>(h.counts[v]) * v;
    }
    cost_.assign(256 * 256, 0.0);
    for (int lo = 0; lo < 256; ++lo)
      for (int hi = lo; hi < 256; ++hi) {
        const auto ww = static_cast<std::uint64_t>(w[hi + 1] - w[lo]);
        if (ww == 0) continue;
        const auto ss = static_cast<double>(static_cast<std::uint64_t>(s[hi + 1] - s[lo]));
        cost_[std::size_t(lo) * 256 + std::size_t(hi)] = ss * ss / static_cast<double>(ww);
      }
  }

  double cost(int lo, int hi) const { return cost_[std::size_t(lo) * 256 + std::size_t(hi)]; }

  double score(const std::vector<int>& t) const {
    double acc = 0.0;
    for (int k = int(t.size()); k >= 0; --k) {
      const int lo = k == 0 ? 0 : t[std::size_t(k - 1)] + 1;
      const int hi = k == int(t.size()) ? 255 : t[std::size_t(k)];
      acc = cost(lo, hi) + acc;
    }
    return acc;
  }

  BruteOtsu solve(int levels) const {
    BruteOtsu best;
    if (levels == 1) {
      for (int a = 0; a <= 254; ++a) consider(best, {a}, cost(0, a) + cost(a + 1, 255));
    } else if (levels == 2) {
      for (int a = 0; a <= 253; ++a)
        for (int b = a + 1; b <= 254; ++b) consider(best, {a, b}, cost(0, a) + (cost(a + 1, b) + cost(b + 1, 255)));
    } else if (levels == 3) {
      for (int a = 0; a <= 252; ++a)
        for (int b = a + 1; b <= 253; ++b) {
          const double ca = cost(0, a);
          for (int c = b + 1; c <= 254; ++c) {
            const double v = ca + (cost(a + 1, b) + (cost(b + 1, c) + cost(c + 1, 255)));
            if (v > best.score) best = {v, {a, b, c}};
          }
        }
    }
    return best;
  }

 private:
  static void consider(BruteOtsu& best, std::vector<int> t, double v) {
    if (v > best.score) best = {v, std::move(t)};
  }
  std::vector<double> cost_;
};

// Textbook between-class variance, sum_k w_k (mu_k - mu_T)^2, in long double.
inline long double textbook_variance(const Histogram256& h, const std::vector<int>& t) {
  long double n = 0, m = 0;
  for (int v = 0; v < 256; ++v) {
    n += h.counts[v];
    m += static_cast<long double>(h.counts[v]) * v;
  }
  const long double mu_t = m / n;
  long double var = 0;
  for (std::size_t k = 0; k <= t.size(); ++k) {
    const int lo = k == 0 ? 0 : t[k - 1] + 1;
    const int hi = k == t.size() ? 255 : t[k];
    long double w = 0, s = 0;
    for (int v = lo; v <= hi; ++v) {
      w += h.counts[v];
      s += static_cast<long double>(h.counts[v]) * v;
    }
    if (w == 0) continue;
    const long double mu = s / w;
    var += w / n * (mu - mu_t) * (mu - mu_t);
  }
  return var;
}

// Reference colour conversions in long double, straight from the textbook
// formulas (not the 8-bit code paths).
struct Lab {
  long double l, a, b;
};

inline Lab reference_lab(int r8, int g8, int b8) {
  auto lin = [](int v) {
    const long double c = v / 255.0L;
    return c <= 0.04045L ? c / 12.92L : std::pow((c + 0.055L) / 1.055L, 2.4L);
  };
  const long double r = lin(r8), g = lin(g8), b = lin(b8);
  const long double x = 0.4124564L * r + 0.3575761L * g + 0.1804375L * b;
  const long double y = 0.2126729L * r + 0.7151522L * g + 0.0721750L * b;
  const long double z = 0.0193339L * r + 0.1191920L * g + 0.9503041L * b;
  auto f = [](long double t) {
    constexpr long double d = 6.0L / 29.0L;
    return t > d * d * d ? std::cbrt(t) : t / (3 * d * d) + 4.0L / 29.0L;
  };
  const long double fx = f(x / 0.95047L), fy = f(y / 1.0L), fz = f(z / 1.08883L);
  return {116 * fy - 16, 500 * (fx - fy), 200 * (fy - fz)};
}

inline std::array<long double, 3> reference_hsv(int r8, int g8, int b8) {
  const long double r = r8 / 255.0L, g = g8 / 255.0L, b = b8 / 255.0L;
  const long double mx = std::max({r, g, b}), mn = std::min({r, g, b}), d = mx - mn;
  long double h = 0;
  if (d > 0) {
    if (mx == r)
      h = 60 * std::fmod((g - b) / d + 6, 6.0L);
    else if (mx == g)
      h = 60 * ((b - r) / d + 2);
    else
      h = 60 * ((r - g) / d + 4);
  }
  return {h, mx == 0 ? 0 : d / mx, mx};
}

inline std::array<long double, 3> reference_ycbcr(int r, int g, int b) {
  const long double y = 0.299L * r + 0.587L * g + 0.114L * b;
  return {y, 128 + (b - y) / 1.772L, 128 + (r - y) / 1.402L};
}

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    SplitMix64 rng(std::uint64_t(std::hash<std::string>{}(tag)) ^ std::uint64_t(::getpid()));
    path_ = std::filesystem::temp_directory_path() / ("fpp_" + tag + "_" + std::to_string(rng.next() % 1000000007));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace fpptest
