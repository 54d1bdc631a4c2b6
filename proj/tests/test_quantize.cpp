#include <set>

#include "doctest.h"
#include "fpp/analysis.hpp"
#include "fpp/error.hpp"
#include "fpp/quantize.hpp"
#include "support.hpp"

using namespace fpp;
using fpptest::BruteForceOtsu;

namespace {

Errc code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::ParseError;  // sentinel: nothing thrown
}

Raster8 permute_channels(const Raster8& r, std::array<int, 3> order) {
  Raster8 out(r.width(), r.height(), 3, r.tag());
  for (int y = 0; y < r.height(); ++y)
    for (int x = 0; x < r.width(); ++x)
      for (int c = 0; c < 3; ++c) out.at(x, y, c) = r.at(x, y, order[std::size_t(c)]);
  return out;
}

std::set<int> distinct_in_channel(const Raster8& r, int c) {
  std::set<int> s;
  for (int y = 0; y < r.height(); ++y)
    for (int x = 0; x < r.width(); ++x) s.insert(r.at(x, y, c));
  return s;
}

}  // namespace

TEST_SUITE("quantize") {

TEST_CASE("histogram basics") {
  const std::vector<std::uint8_t> a{0, 0, 255};
  const Histogram256 h = histogram256(a);
  CHECK(h.counts[0] == 2);
  CHECK(h.counts[255] == 1);
  CHECK(h.total() == 3);
  CHECK(histogram256({}).total() == 0);

  SplitMix64 rng(1);
  for (int i = 0; i < 50; ++i) {
    std::vector<std::uint8_t> x(rng.below(3000)), y(rng.below(3000));
    for (auto& v : x) v = std::uint8_t(rng.below(256));
    for (auto& v : y) v = std::uint8_t(rng.below(256));
    std::vector<std::uint8_t> xy = x;
    xy.insert(xy.end(), y.begin(), y.end());
    CHECK(histogram256(xy) == histogram256(x) + histogram256(y));
  }
}

TEST_CASE("two spikes: the first maximizing threshold wins") {
  Histogram256 h;
  h.counts[60] = 100;
  h.counts[200] = 100;
  const auto t = otsu_multilevel(h, 1);
  CHECK(t.thresholds == std::vector<int>{60});
  // every t in [60,199] scores the same
  CHECK(between_class_score(h, {{60}}) == between_class_score(h, {{199}}));
  CHECK(between_class_score(h, {{59}}) < between_class_score(h, {{60}}));
}

TEST_CASE("single-valued histogram gives evenly spaced thresholds") {
  Histogram256 h;
  h.counts[77] = 1000;
  for (int L : {1, 2, 7, 254}) {
    const auto t = otsu_multilevel(h, L);
    CHECK(t == evenly_spaced_thresholds(L));
    CHECK(t.valid());
    CHECK(between_class_variance(h, t) == 0.0);
  }
  CHECK(evenly_spaced_thresholds(1).thresholds == std::vector<int>{127});
  CHECK(evenly_spaced_thresholds(3).thresholds == std::vector<int>{63, 127, 191});
}

TEST_CASE("level and histogram errors") {
  Histogram256 h;
  h.counts[3] = 1;
  CHECK(code_of([&] { otsu_multilevel(h, 0); }) == Errc::InvalidLevel);
  CHECK(code_of([&] { otsu_multilevel(h, 255); }) == Errc::InvalidLevel);
  CHECK(code_of([&] { otsu_multilevel(Histogram256{}, 2); }) == Errc::EmptyHistogram);
  CHECK(code_of([] { quantize_plane(Raster8(2, 2, 1), 3); }) == Errc::WrongChannelCount);
  CHECK(code_of([] { quantize_full(Raster8(2, 2, 3), 0); }) == Errc::InvalidLevel);
}

TEST_CASE("DP matches brute force, L = 1 and 2") {
  SplitMix64 rng(77);
  for (int i = 0; i < 80; ++i) {
    const Histogram256 h = fpptest::random_histogram(rng);
    const BruteForceOtsu oracle(h);
    for (int L : {1, 2}) {
      const auto dp = otsu_multilevel(h, L);
      const auto bf = oracle.solve(L);
      CHECK(dp.valid());
      CHECK(dp.levels() == L);
      if (h.distinct() > 1) {
        CHECK(between_class_score(h, dp) == bf.score);
        CHECK(oracle.score(dp.thresholds) == bf.score);
        CHECK(dp.thresholds == bf.thresholds);
      }
    }
  }
}

TEST_CASE("DP matches brute force, L = 3 on sparse support") {
  SplitMix64 rng(78);
  for (int i = 0; i < 6; ++i) {
    const Histogram256 h = fpptest::sparse_histogram(rng, 32);
    if (h.distinct() < 2) continue;
    const BruteForceOtsu oracle(h);
    const auto dp = otsu_multilevel(h, 3);
    const auto bf = oracle.solve(3);
    CHECK(between_class_score(h, dp) == bf.score);
    CHECK(dp.thresholds == bf.thresholds);
  }
}

TEST_CASE("the score and the textbook variance share maximizers") {
  SplitMix64 rng(5);
  for (int i = 0; i < 40; ++i) {
    const Histogram256 h = fpptest::random_histogram(rng);
    if (h.distinct() < 3) continue;
    const auto dp = otsu_multilevel(h, 2);
    const long double best = fpptest::textbook_variance(h, dp.thresholds);
    CHECK(double(best) == doctest::Approx(between_class_variance(h, dp)).epsilon(1e-12));
    for (int k = 0; k < 300; ++k) {
      int a = int(rng.below(254)), b = int(rng.below(254));
      if (a == b) continue;
      if (a > b) std::swap(a, b);
      CHECK(fpptest::textbook_variance(h, {a, b}) <= best * (1 + 1e-12L));
    }
  }
}

TEST_CASE("thresholds shift with the histogram") {
  SplitMix64 rng(9);
  int checked = 0;
  for (int i = 0; i < 150; ++i) {
    Histogram256 h;
    const int n = fpptest::rand_int(rng, 4, 20);
    for (int k = 0; k < n; ++k) h.counts[rng.below(150)] += 1 + rng.below(500);
    const int L = fpptest::rand_int(rng, 1, 3);
    if (h.distinct() <= L) continue;
    const int c = fpptest::rand_int(rng, 1, 105);
    Histogram256 shifted;
    for (int v = 0; v + c < 256; ++v) shifted.counts[v + c] = h.counts[v];
    const auto t0 = otsu_multilevel(h, L), t1 = otsu_multilevel(shifted, L);
    std::vector<int> expect = t0.thresholds;
    for (auto& t : expect) t += c;
    if (t1.thresholds != expect) {
      // only a floating-point tie may pick a different maximizer
      CHECK(double(fpptest::textbook_variance(shifted, t1.thresholds)) ==
            doctest::Approx(double(fpptest::textbook_variance(shifted, expect))).epsilon(1e-12));
    }
    ++checked;
  }
  CHECK(checked > 100);
}

TEST_CASE("representatives") {
  Histogram256 h;
  h.counts[0] = 4;
  h.counts[10] = 4;
  h.counts[200] = 1;
  const auto reps = representatives(h, {{99, 150}});
  REQUIRE(reps.size() == 3);
  CHECK(reps[0] == 5);
  CHECK(reps[1] == 125);  // empty (99,150]: midpoint of [100,150]
  CHECK(reps[2] == 200);

  SplitMix64 rng(31);
  for (int i = 0; i < 100; ++i) {
    const Histogram256 r = fpptest::random_histogram(rng);
    const auto t = otsu_multilevel(r, fpptest::rand_int(rng, 1, 8));
    const auto got = representatives(r, t);
    for (int k = 0; k <= t.levels(); ++k) {
      const int lo = k == 0 ? 0 : t.thresholds[std::size_t(k - 1)] + 1;
      const int hi = k == t.levels() ? 255 : t.thresholds[std::size_t(k)];
      long double w = 0, s = 0;
      for (int v = lo; v <= hi; ++v) {
        w += r.counts[v];
        s += static_cast<long double>(r.counts[v]) * v;
      }
      const int expect = w == 0 ? (lo + hi) / 2 : int(std::floor(s / w + 0.5L));
      CHECK(int(got[std::size_t(k)]) == expect);
      if (k > 0) CHECK(got[std::size_t(k)] >= got[std::size_t(k - 1)]);
    }
  }
}

TEST_CASE("quantize_full examples") {
  Raster8 c(5, 4, 3);
  for (auto& v : c.data()) v = 91;
  const Raster8 q = quantize_full(c, 5);
  CHECK(std::equal(q.data().begin(), q.data().end(), c.data().begin()));
  CHECK(q.tag() == ColorTag::quant(QuantMode::FULL, 5));

  Raster8 two(4, 4, 1);
  for (int y = 0; y < 4; ++y)
    for (int x = 0; x < 4; ++x) two.at(x, y, 0) = (x + y) % 2 ? 220 : 30;
  for (int L : {1, 3, 7}) {
    const Raster8 t = quantize_full(two, L);
    CHECK(std::equal(t.data().begin(), t.data().end(), two.data().begin()));
  }
}

TEST_CASE("quantize_plane examples") {
  SplitMix64 rng(12);
  SUBCASE("identical planes match full quantization") {
    const Raster8 g = fpptest::smooth_raster(rng, 24, 24, 1);
    Raster8 rgb(24, 24, 3);
    for (int y = 0; y < 24; ++y)
      for (int x = 0; x < 24; ++x)
        for (int c = 0; c < 3; ++c) rgb.at(x, y, c) = g.at(x, y, 0);
    const Raster8 p = quantize_plane(rgb, 6), f = quantize_full(rgb, 6), fg = quantize_full(g, 6);
    CHECK(std::equal(p.data().begin(), p.data().end(), f.data().begin()));
    for (int y = 0; y < 24; ++y)
      for (int x = 0; x < 24; ++x) CHECK(p.at(x, y, 1) == fg.at(x, y, 0));
  }
  SUBCASE("binary red, constant green and blue") {
    Raster8 r(6, 6, 3);
    for (int y = 0; y < 6; ++y)
      for (int x = 0; x < 6; ++x) {
        r.at(x, y, 0) = x < 3 ? 0 : 255;
        r.at(x, y, 1) = 40;
        r.at(x, y, 2) = 180;
      }
    const auto res = quantize_detailed(r, QuantMode::PLANE, 4);
    CHECK(std::equal(res.image.data().begin(), res.image.data().end(), r.data().begin()));
    CHECK(distinct_in_channel(res.class_index, 0).size() == 2);
    CHECK(res.thresholds.size() == 3);
  }
  SUBCASE("level bound") {
    for (int i = 0; i < 20; ++i) {
      const Raster8 r = i % 2 ? fpptest::random_raster(rng, 20, 20, 3) : fpptest::smooth_raster(rng, 20, 20, 3);
      for (int L = 4; L <= 7; ++L) {
        const Raster8 q = quantize_plane(r, L);
        for (int c = 0; c < 3; ++c) {
          const auto d = int(distinct_in_channel(q, c).size());
          CHECK(d <= L + 1);
          CHECK(ceil_log2(d) <= ceil_log2(L + 1));
        }
      }
    }
  }
}

TEST_CASE("quantization is a monotone many-to-one map per channel") {
  SplitMix64 rng(44);
  for (int i = 0; i < 20; ++i) {
    const Raster8 r = fpptest::smooth_raster(rng, 16, 16, 3);
    for (auto mode : {QuantMode::FULL, QuantMode::PLANE}) {
      const auto res = quantize_detailed(r, mode, fpptest::rand_int(rng, 1, 9));
      for (int c = 0; c < 3; ++c) {
        std::array<int, 256> seen;
        seen.fill(-1);
        for (int y = 0; y < 16; ++y)
          for (int x = 0; x < 16; ++x) {
            const int v = r.at(x, y, c), q = res.image.at(x, y, c);
            if (seen[std::size_t(v)] >= 0) CHECK(seen[std::size_t(v)] == q);
            seen[std::size_t(v)] = q;
          }
        int last = -1;
        for (int v = 0; v < 256; ++v)
          if (seen[std::size_t(v)] >= 0) {
            CHECK(seen[std::size_t(v)] >= last);
            last = seen[std::size_t(v)];
          }
      }
    }
  }
}

TEST_CASE("channel permutations") {
  SplitMix64 rng(3);
  for (int i = 0; i < 10; ++i) {
    const Raster8 r = fpptest::smooth_raster(rng, 18, 12, 3);
    const std::array<int, 3> order{2, 0, 1};
    const Raster8 pr = permute_channels(r, order);
    CHECK(quantize_plane(pr, 5) == permute_channels(quantize_plane(r, 5), order));
    CHECK(quantize_full(pr, 5) == permute_channels(quantize_full(r, 5), order));
  }
}

TEST_CASE("class index image agrees with the thresholds") {
  SplitMix64 rng(8);
  const Raster8 r = fpptest::random_raster(rng, 10, 10, 3);
  const auto res = quantize_detailed(r, QuantMode::PLANE, 3);
  for (int y = 0; y < 10; ++y)
    for (int x = 0; x < 10; ++x)
      for (int c = 0; c < 3; ++c) {
        const int k = res.class_index.at(x, y, c);
        CHECK(k == res.thresholds[std::size_t(c)].class_of(r.at(x, y, c)));
        CHECK(res.image.at(x, y, c) == res.representatives[std::size_t(c)][std::size_t(k)]);
      }
}

}
