#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fpp/classifier.hpp"
#include "fpp/conventional.hpp"
#include "fpp/dataset.hpp"
#include "fpp/illum.hpp"

namespace fpp {

enum class StageKind { Resize, ToHsv, ToLab, ToYcbcr, QuantizeFull, QuantizePlane, HistEq, Lcn };

struct StageSpec {
  StageKind kind = StageKind::Resize;
  int width = 299, height = 299;  // resize
  int levels = 0;                 // quantize_*
  LcnParams lcn{};                // lcn

  bool is_color_conversion() const noexcept {
    return kind == StageKind::ToHsv || kind == StageKind::ToLab || kind == StageKind::ToYcbcr;
  }
  /// Canonical "name k=v ..." form; parse_stage(to_text()) round-trips.
  std::string to_text() const;
  friend bool operator==(const StageSpec&, const StageSpec&) = default;
};

/// "quantize_plane levels=7", "resize width=64 height=64", "lcn window=9", ...
StageSpec parse_stage(std::string_view text);

enum class Augmentation { WA, NA };
enum class Normalization { WN, NN };

struct PipelineConfig {
  std::vector<StageSpec> stages;
  Augmentation augmentation = Augmentation::NA;
  Normalization normalization = Normalization::NN;
  std::uint64_t seed = 0;
  SplitRatios ratios{};
  TrainConfig train{};
  int pool = kDefaultPoolSize;
  int shift = kTranslatePixels;

  /// Stage params in range and at most one colour conversion.
  void validate() const;
};

struct PreprocessorSpec {
  std::string name;
  std::vector<StageSpec> stages;
  bool available = true;
};

struct GridConfig {
  PipelineConfig base;                       // shared settings; base.stages unused
  std::vector<StageSpec> tail;               // appended to every preprocessor's stages
  std::vector<PreprocessorSpec> preprocessors;
};

// Line-oriented text. '#' starts a comment. Optional first line
// "fpp-config 1". Keys:
//   stage <stage>                 pipeline stage, in execution order
//   augmentation WA|NA
//   normalization WN|NN
//   seed <u64>
//   ratios <train> <val> <test>
//   epochs <n>  batch <n>  gamma <g>  lr0 <x>  lr_floor <x>  decay_step <n>  max_iterations <n>
//   pool <n>    shift <n>
// Grid files additionally accept
//   tail <stage>
//   preprocessor <name> [<stage> {; <stage>}] | preprocessor <name> unavailable
PipelineConfig parse_config(std::string_view text);
GridConfig parse_grid_config(std::string_view text);

std::string to_string(Augmentation a);
std::string to_string(Normalization n);

}  // namespace fpp
