#include "fpp/quantize.hpp"

#include <limits>
#include <string>

#include "fpp/error.hpp"
#include "fpp/kernels.hpp"

namespace fpp {

std::uint64_t Histogram256::total() const noexcept {
  std::uint64_t t = 0;
  for (auto c : counts) t += c;
  return t;
}

int Histogram256::distinct() const noexcept {
  int n = 0;
  for (auto c : counts) n += c != 0;
  return n;
}

Histogram256& Histogram256::operator+=(const Histogram256& o) noexcept {
  for (int v = 0; v < 256; ++v) counts[v] += o.counts[v];
  return *this;
}

Histogram256 histogram256(std::span<const std::uint8_t> samples) {
  return Histogram256{kernels::omp::histogram(samples)};
}

bool ThresholdVector::valid() const noexcept {
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    if (thresholds[i] < 0 || thresholds[i] > 254) return false;
    if (i > 0 && thresholds[i] <= thresholds[i - 1]) return false;
  }
  return true;
}

int ThresholdVector::class_of(int v) const noexcept {
  int k = 0;
  while (k < levels() && thresholds[std::size_t(k)] < v) ++k;
  return k;
}

namespace {

// Cumulative zeroth and first moments; class [lo,hi] costs S^2/W.
class Moments {
 public:
  explicit Moments(const Histogram256& h) {
    for (int v = 0; v < 256; ++v) {
      w_[v + 1] = w_[v] + h.counts[v];
      s_[v + 1] = s_[v] + h.counts[v] * std::uint64_t(v);
    }
  }
  std::uint64_t count(int lo, int hi) const { return w_[hi + 1] - w_[lo]; }
  std::uint64_t sum(int lo, int hi) const { return s_[hi + 1] - s_[lo]; }
  double cost(int lo, int hi) const {
    const std::uint64_t w = count(lo, hi);
    if (w == 0) return 0.0;
    const double s = static_cast<double>(sum(lo, hi));
    return s * s / static_cast<double>(w);
  }

 private:
  std::array<std::uint64_t, 257> w_{};
  std::array<std::uint64_t, 257> s_{};
};

void check_levels(int levels) {
  if (levels < 1 || levels > kMaxLevels)
    throw Error(Errc::InvalidLevel, "levels must be in [1," + std::to_string(kMaxLevels) + "], got " +
                                        std::to_string(levels));
}

// Inclusive grey range of class k.
std::pair<int, int> class_range(const ThresholdVector& t, int k) {
  const int lo = k == 0 ? 0 : t.thresholds[std::size_t(k - 1)] + 1;
  const int hi = k == t.levels() ? 255 : t.thresholds[std::size_t(k)];
  return {lo, hi};
}

}  // namespace

double between_class_score(const Histogram256& h, const ThresholdVector& t) {
  const Moments m(h);
  double acc = 0.0;
  for (int k = t.levels(); k >= 0; --k) {
    const auto [lo, hi] = class_range(t, k);
    acc = m.cost(lo, hi) + acc;
  }
  return acc;
}

double between_class_variance(const Histogram256& h, const ThresholdVector& t) {
  const Moments m(h);
  const double n = static_cast<double>(m.count(0, 255));
  if (n == 0) return 0.0;
  const double mu_t = static_cast<double>(m.sum(0, 255)) / n;
  double var = 0.0;
  for (int k = 0; k <= t.levels(); ++k) {
    const auto [lo, hi] = class_range(t, k);
    const auto w = m.count(lo, hi);
    if (w == 0) continue;
    const double mu = static_cast<double>(m.sum(lo, hi)) / static_cast<double>(w);
    var += static_cast<double>(w) / n * (mu - mu_t) * (mu - mu_t);
  }
  return var;
}

ThresholdVector evenly_spaced_thresholds(int levels) {
  check_levels(levels);
  ThresholdVector t;
  for (int i = 1; i <= levels; ++i) t.thresholds.push_back(i * 256 / (levels + 1) - 1);
  return t;
}

ThresholdVector otsu_multilevel(const Histogram256& h, int levels) {
  check_levels(levels);
  if (h.total() == 0) throw Error(Errc::EmptyHistogram, "otsu_multilevel on empty histogram");
  if (h.distinct() == 1) return evenly_spaced_thresholds(levels);

  const Moments m(h);
  const int L = levels;
  // best[j][s]: max score of classes j..L when threshold j (1-based) is s,
  // i.e. class j starts at s+1. Feasible s for threshold j: [j-1, 254-(L-j)].
  std::vector<std::array<double, 255>> best(std::size_t(L) + 1);
  std::vector<std::array<int, 255>> next(std::size_t(L) + 1);
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();

  for (int s = L - 1; s <= 254; ++s) best[std::size_t(L)][std::size_t(s)] = m.cost(s + 1, 255);

  for (int j = L - 1; j >= 1; --j) {
    const int s_lo = j - 1, s_hi = 254 - (L - j);
    for (int s = s_lo; s <= s_hi; ++s) {
      double top = kNegInf;
      int arg = -1;
      for (int u = s + 1; u <= s_hi + 1; ++u) {
        const double v = m.cost(s + 1, u) + best[std::size_t(j + 1)][std::size_t(u)];
        if (v > top) {  // strict: keeps the smallest maximizer
          top = v;
          arg = u;
        }
      }
      best[std::size_t(j)][std::size_t(s)] = top;
      next[std::size_t(j)][std::size_t(s)] = arg;
    }
  }

  double top = kNegInf;
  int t1 = -1;
  for (int s = 0; s <= 254 - (L - 1); ++s) {
    const double v = m.cost(0, s) + best[1][std::size_t(s)];
    if (v > top) {
      top = v;
      t1 = s;
    }
  }

  ThresholdVector out;
  out.thresholds.reserve(std::size_t(L));
  out.thresholds.push_back(t1);
  for (int j = 1; j < L; ++j) out.thresholds.push_back(next[std::size_t(j)][std::size_t(out.thresholds.back())]);
  return out;
}

std::vector<std::uint8_t> representatives(const Histogram256& h, const ThresholdVector& t) {
  const Moments m(h);
  std::vector<std::uint8_t> reps;
  reps.reserve(std::size_t(t.levels()) + 1);
  for (int k = 0; k <= t.levels(); ++k) {
    const auto [lo, hi] = class_range(t, k);
    const std::uint64_t w = m.count(lo, hi);
    if (w == 0) {
      reps.push_back(static_cast<std::uint8_t>((lo + hi) / 2));
    } else {
      // round-half-up of S/W in integers
      reps.push_back(static_cast<std::uint8_t>((2 * m.sum(lo, hi) + w) / (2 * w)));
    }
  }
  return reps;
}

std::array<std::uint8_t, 256> quantization_lut(const ThresholdVector& t, std::span<const std::uint8_t> reps) {
  std::array<std::uint8_t, 256> lut{};
  for (int v = 0; v < 256; ++v) lut[std::size_t(v)] = reps[std::size_t(t.class_of(v))];
  return lut;
}

namespace {

std::array<std::uint8_t, 256> index_lut(const ThresholdVector& t) {
  std::array<std::uint8_t, 256> lut{};
  for (int v = 0; v < 256; ++v) lut[std::size_t(v)] = static_cast<std::uint8_t>(t.class_of(v));
  return lut;
}

}  // namespace

QuantizeResult quantize_detailed(const Raster8& r, QuantMode mode, int levels) {
  check_levels(levels);
  if (r.empty()) throw Error(Errc::EmptyHistogram, "quantize on empty raster");
  const int nc = r.channels();
  if (mode == QuantMode::PLANE && nc != 3)
    throw Error(Errc::WrongChannelCount, "plane quantization needs 3 channels, got " + std::to_string(nc));

  QuantizeResult res{r, r, {}, {}};
  res.image.set_tag(ColorTag::quant(mode, levels));
  res.class_index.set_tag(ColorTag::quant(mode, levels));

  if (mode == QuantMode::FULL) {
    const Histogram256 h{kernels::omp::histogram(r.data())};
    auto t = otsu_multilevel(h, levels);
    auto reps = representatives(h, t);
    kernels::omp::apply_lut(res.image.data(), quantization_lut(t, reps));
    kernels::omp::apply_lut(res.class_index.data(), index_lut(t));
    res.thresholds.push_back(std::move(t));
    res.representatives.push_back(std::move(reps));
  } else {
    for (int c = 0; c < nc; ++c) {
      const Histogram256 h{kernels::omp::histogram(r.data(), nc, c)};
      auto t = otsu_multilevel(h, levels);
      auto reps = representatives(h, t);
      kernels::omp::apply_lut(res.image.data(), quantization_lut(t, reps), nc, c);
      kernels::omp::apply_lut(res.class_index.data(), index_lut(t), nc, c);
      res.thresholds.push_back(std::move(t));
      res.representatives.push_back(std::move(reps));
    }
  }
  return res;
}

Raster8 quantize_full(const Raster8& r, int levels) { return quantize_detailed(r, QuantMode::FULL, levels).image; }

Raster8 quantize_plane(const Raster8& r, int levels) { return quantize_detailed(r, QuantMode::PLANE, levels).image; }

}  // namespace fpp
