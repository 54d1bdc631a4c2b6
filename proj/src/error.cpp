#include "fpp/error.hpp"

namespace fpp {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::MalformedFile: return "MalformedFile";
    case Errc::UnsupportedDepth: return "UnsupportedDepth";
    case Errc::IncompatibleFormat: return "IncompatibleFormat";
    case Errc::BadMagic: return "BadMagic";
    case Errc::TruncatedPayload: return "TruncatedPayload";
    case Errc::WrongColorSpace: return "WrongColorSpace";
    case Errc::WrongChannelCount: return "WrongChannelCount";
    case Errc::InvalidLevel: return "InvalidLevel";
    case Errc::EmptyHistogram: return "EmptyHistogram";
    case Errc::InvalidParams: return "InvalidParams";
    case Errc::TooSmall: return "TooSmall";
    case Errc::EmptyTrainingSet: return "EmptyTrainingSet";
    case Errc::ChannelMismatch: return "ChannelMismatch";
    case Errc::EmptyDataset: return "EmptyDataset";
    case Errc::UnreadablePath: return "UnreadablePath";
    case Errc::NoClassesRemain: return "NoClassesRemain";
    case Errc::ClassTooSmall: return "ClassTooSmall";
    case Errc::DegenerateGeometry: return "DegenerateGeometry";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::EmptyBatch: return "EmptyBatch";
    case Errc::EmptySplit: return "EmptySplit";
    case Errc::ParseError: return "ParseError";
    case Errc::UnknownStage: return "UnknownStage";
    case Errc::InvalidParam: return "InvalidParam";
  }
  return "Unknown";
}

bool is_usage_error(Errc code) noexcept {
  return code == Errc::ParseError || code == Errc::UnknownStage || code == Errc::InvalidParam;
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(what), code_(code) {}

}  // namespace fpp
