#pragma once

#include <cstdint>
#include <filesystem>

#include "fpp/raster.hpp"

namespace fpp {

struct SynthOptions {
  int classes = 10;
  int per_class = 40;
  int size = 64;
  std::uint64_t seed = 7;
};

/// One face-like RGB image: class-specific layout (face oval, eyes, mouth,
/// hair band, colours) with per-sample jitter, illumination gain and
/// gradient, and sensor noise. Deterministic in (class, sample, seed).
Raster8 synth_face(int class_index, int sample_index, const SynthOptions& opt);

/// Writes <dir>/person_XX/img_YYY.png for every class and sample.
void write_synthetic_dataset(const std::filesystem::path& dir, const SynthOptions& opt);

}  // namespace fpp
