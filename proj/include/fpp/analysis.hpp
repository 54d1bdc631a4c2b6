#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fpp/raster.hpp"

namespace fpp {

enum class Connectivity { Four = 4, Eight = 8 };

/// A single channel viewed as a width*height plane.
struct ChannelView {
  std::span<const std::uint8_t> values;
  int width;
  int height;
};

/// Fraction of neighbouring pixel pairs with identical values.
double equal_neighbor_fraction(const ChannelView& ch, Connectivity conn = Connectivity::Four);

/// Mean of 1/(1+|a-b|) over neighbouring pixel pairs.
double glcm_homogeneity(const ChannelView& ch, Connectivity conn = Connectivity::Four);

struct LevelStats {
  int distinct_levels = 0;
  int effective_bits = 0;  // ceil(log2(distinct)), 0 for a single level
  double entropy_bits = 0.0;
};

LevelStats level_stats(std::span<const std::uint8_t> values);

/// ceil(log2(n)) for n >= 1.
int ceil_log2(int n) noexcept;

struct HomogeneityReport {
  std::vector<double> equal_neighbor_fraction;
  std::vector<double> glcm_homogeneity;
  std::vector<int> distinct_levels;
  std::vector<int> effective_bits;
  std::vector<double> entropy_bits;
};

HomogeneityReport analyze_raster(const Raster8& r, Connectivity conn = Connectivity::Four);

/// CSV with header "image,variant,channel,metric,value"; one row per
/// image per channel per metric.
std::string homogeneity_csv_header();
std::string homogeneity_csv_rows(const std::string& image, const std::string& variant, const HomogeneityReport& rep);

}  // namespace fpp
