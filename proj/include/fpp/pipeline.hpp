#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fpp/analysis.hpp"
#include "fpp/classifier.hpp"
#include "fpp/config.hpp"
#include "fpp/conventional.hpp"
#include "fpp/dataset.hpp"
#include "fpp/raster.hpp"
#include "fpp/report.hpp"

namespace fpp {

/// Runs the stages in order on one raster.
Raster8 apply_stages(const Raster8& r, std::span<const StageSpec> stages);

/// Decodes the entry's source image and applies its transform (if any).
Raster8 load_entry(const DatasetManifest& m, const ManifestEntry& e);

struct PipelineOutput {
  DatasetManifest manifest;                // input manifest plus any augmented entries
  std::vector<Raster8> images;             // stage output, one per manifest entry
  std::vector<TensorF32> tensors;          // [0,1]-scaled, standardized under WN
  std::optional<StandardizationStats> stats;
  std::string analysis_csv;                // homogeneity rows, original vs processed
};

/// Every entry goes through the stages; WA adds the four translated copies
/// of each TRAIN entry; WN standardizes every split with TRAIN statistics.
/// Images are processed in parallel and collected by manifest index.
/// When `out_dir` is set the run is also written there:
///   images/<index>.png  tensors/<index>.fpp  manifest.json  index.json
///   analysis.csv  stats.json (WN only)
PipelineOutput run_pipeline(const DatasetManifest& manifest, const PipelineConfig& config,
                            const std::optional<std::filesystem::path>& out_dir = std::nullopt);

/// Feature matrices per split from a pipeline output.
struct SplitFeatures {
  FeatureSet train, val, test;
};
SplitFeatures features_by_split(const DatasetManifest& m, std::span<const TensorF32> tensors, int pool);

/// Runs every available preprocessor through the four WA/NA x WN/NN setups,
/// trains and scores each cell on TEST. Unavailable preprocessors produce
/// an "unavailable" row and no training run.
RunReport run_grid(const DatasetManifest& manifest, const GridConfig& grid);

std::string feature_proxy_note(int pool);

}  // namespace fpp
