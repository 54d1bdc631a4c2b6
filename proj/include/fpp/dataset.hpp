#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fpp {

enum class Split { UNASSIGNED, TRAIN, VAL, TEST };

std::string_view to_string(Split s) noexcept;
Split parse_split(std::string_view s);

struct SplitRatios {
  double train = 0.70;
  double val = 0.05;
  double test = 0.25;

  void validate() const;
  friend bool operator==(const SplitRatios&, const SplitRatios&) = default;
};

struct ManifestEntry {
  std::string path;  // relative to the manifest root
  int class_index = 0;
  Split split = Split::UNASSIGNED;
  std::optional<std::string> derived_from;  // source path for augmented copies
  std::string transform;                    // e.g. "shift:+30,0"; empty for originals

  friend bool operator==(const ManifestEntry&, const ManifestEntry&) = default;
};

struct DatasetManifest {
  std::string root;
  std::vector<std::string> classes;
  std::vector<ManifestEntry> entries;
  std::uint64_t seed = 0;
  SplitRatios ratios{};

  std::filesystem::path resolve(const ManifestEntry& e) const;
  std::vector<int> class_sizes() const;  // originals only
  std::size_t count(Split s) const;
  void validate() const;

  friend bool operator==(const DatasetManifest&, const DatasetManifest&) = default;
};

/// One class per subdirectory (sorted by name), entries are the .png,
/// .ppm and .pgm files beneath it, sorted by relative path.
DatasetManifest ingest_directory(const std::filesystem::path& root);

inline constexpr int kDefaultMinImages = 50;

/// Keeps classes with strictly more than `threshold` images.
DatasetManifest filter_min_images(const DatasetManifest& m, int threshold = kDefaultMinImages);

/// Stratified split: per class, entries sorted by path are shuffled with
/// SplitMix64(seed ^ fnv1a64(class name)); the first floor(val*n) go to
/// VAL, the next floor(test*n) to TEST, the rest to TRAIN. Derived
/// entries follow their source.
DatasetManifest split(const DatasetManifest& m, const SplitRatios& ratios, std::uint64_t seed);

struct SplitCounts {
  int train = 0, val = 0, test = 0;
  friend bool operator==(const SplitCounts&, const SplitCounts&) = default;
};
SplitCounts split_counts_for(int n, const SplitRatios& ratios);
std::vector<SplitCounts> per_class_split_counts(const DatasetManifest& m);

/// Adds the four translated copies of every TRAIN entry, marked derived.
DatasetManifest with_translation_augments(const DatasetManifest& m, int shift);

std::string serialize_manifest(const DatasetManifest& m);
DatasetManifest parse_manifest(std::string_view text);
void save_manifest(const std::filesystem::path& p, const DatasetManifest& m);
DatasetManifest load_manifest(const std::filesystem::path& p);

}  // namespace fpp
