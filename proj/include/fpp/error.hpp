#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fpp {

enum class Errc {
  // raster / io
  MalformedFile,
  UnsupportedDepth,
  IncompatibleFormat,
  BadMagic,
  TruncatedPayload,
  // colorspace / quantize / illum
  WrongColorSpace,
  WrongChannelCount,
  InvalidLevel,
  EmptyHistogram,
  InvalidParams,
  // conventional
  TooSmall,
  EmptyTrainingSet,
  ChannelMismatch,
  // dataset
  EmptyDataset,
  UnreadablePath,
  NoClassesRemain,
  ClassTooSmall,
  // analysis
  DegenerateGeometry,
  // classifier
  DimensionMismatch,
  EmptyBatch,
  EmptySplit,
  // config
  ParseError,
  UnknownStage,
  InvalidParam,
};

std::string_view errc_name(Errc code) noexcept;

/// True for errors caused by malformed user input (config text, flags);
/// the CLI maps these to exit code 1 and everything else to exit code 2.
bool is_usage_error(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace fpp
