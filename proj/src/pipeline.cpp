#include "fpp/pipeline.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <exception>

#include "fpp/colorspace.hpp"
#include "fpp/error.hpp"
#include "fpp/illum.hpp"
#include "fpp/image_io.hpp"
#include "fpp/quantize.hpp"
#include "fpp/tensor_io.hpp"
#include "json.hpp"

namespace fpp {

namespace fs = std::filesystem;

Raster8 apply_stages(const Raster8& r, std::span<const StageSpec> stages) {
  Raster8 cur = r;
  for (const auto& s : stages) {
    switch (s.kind) {
      case StageKind::Resize: cur = resize_bilinear(cur, s.width, s.height); break;
      case StageKind::ToHsv: cur = rgb_to_hsv(cur); break;
      case StageKind::ToLab: cur = rgb_to_lab(cur); break;
      case StageKind::ToYcbcr: cur = rgb_to_ycbcr(cur); break;
      case StageKind::QuantizeFull: cur = quantize_full(cur, s.levels); break;
      case StageKind::QuantizePlane: cur = quantize_plane(cur, s.levels); break;
      case StageKind::HistEq: cur = hist_equalize(cur); break;
      case StageKind::Lcn: cur = local_contrast_normalize(cur, s.lcn); break;
    }
  }
  return cur;
}

namespace {

int parse_signed(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  int v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw Error(Errc::ParseError, "bad shift component");
  return v;
}

}  // namespace

Raster8 load_entry(const DatasetManifest& m, const ManifestEntry& e) {
  Raster8 r = load_image(m.resolve(e));
  if (e.transform.empty()) return r;
  constexpr std::string_view kShift = "shift:";
  if (e.transform.rfind(kShift, 0) != 0) throw Error(Errc::ParseError, "unknown transform '" + e.transform + "'");
  const std::string_view args = std::string_view(e.transform).substr(kShift.size());
  const auto comma = args.find(',');
  if (comma == std::string_view::npos) throw Error(Errc::ParseError, "bad transform '" + e.transform + "'");
  const int dx = parse_signed(args.substr(0, comma)), dy = parse_signed(args.substr(comma + 1));
  const int need = std::max(std::abs(dx), std::abs(dy));
  if (r.width() <= need || r.height() <= need)
    throw Error(Errc::TooSmall, "translation by " + std::to_string(need) + " needs width and height > " +
                                    std::to_string(need));
  return translate(r, dx, dy);
}

namespace {

struct Processed {
  std::vector<Raster8> originals;  // only kept when analysis is requested
  std::vector<Raster8> images;
};

// Parallel over entries; results land at their manifest index. The first
// failing entry (lowest index) is rethrown with its path.
Processed process_entries(const DatasetManifest& m, std::span<const StageSpec> stages, bool keep_originals) {
  const auto n = static_cast<std::ptrdiff_t>(m.entries.size());
  Processed out;
  out.images.resize(std::size_t(n));
  if (keep_originals) out.originals.resize(std::size_t(n));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      Raster8 src = load_entry(m, m.entries[std::size_t(i)]);
      out.images[std::size_t(i)] = apply_stages(src, stages);
      if (keep_originals) out.originals[std::size_t(i)] = std::move(src);
    } catch (...) {
      errors[std::size_t(i)] = std::current_exception();
    }
  }
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    if (!errors[std::size_t(i)]) continue;
    const auto& path = m.entries[std::size_t(i)].path;
    try {
      std::rethrow_exception(errors[std::size_t(i)]);
    } catch (const Error& e) {
      throw Error(e.code(), path + ": " + e.what());
    } catch (const std::exception& e) {
      throw Error(Errc::MalformedFile, path + ": " + e.what());
    }
  }
  return out;
}

std::vector<TensorF32> to_tensors(std::span<const Raster8> images) {
  std::vector<TensorF32> t(images.size());
  const auto n = static_cast<std::ptrdiff_t>(images.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) t[std::size_t(i)] = to_unit_tensor(images[std::size_t(i)]);
  return t;
}

// Standardizes the tensors at `indices` in place with stats over the TRAIN
// ones among them (in index order).
StandardizationStats standardize_subset(const DatasetManifest& m, std::vector<TensorF32>& tensors,
                                        std::span<const std::size_t> indices) {
  std::vector<const TensorF32*> train;
  for (auto i : indices)
    if (m.entries[i].split == Split::TRAIN) train.push_back(&tensors[i]);
  if (train.empty()) throw Error(Errc::EmptyTrainingSet, "normalization needs TRAIN entries");
  const auto stats = compute_stats(train);
  for (auto i : indices) tensors[i] = standardize(tensors[i], stats);
  return stats;
}

std::string index_name(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%06zu", i);
  return buf;
}

void write_text(const fs::path& p, const std::string& s) {
  write_file(p, std::span(reinterpret_cast<const std::uint8_t*>(s.data()), s.size()));
}

}  // namespace

PipelineOutput run_pipeline(const DatasetManifest& manifest, const PipelineConfig& config,
                            const std::optional<fs::path>& out_dir) {
  config.validate();
  PipelineOutput out;
  out.manifest = config.augmentation == Augmentation::WA ? with_translation_augments(manifest, config.shift) : manifest;
  const DatasetManifest& m = out.manifest;

  auto processed = process_entries(m, config.stages, true);
  out.images = std::move(processed.images);
  out.tensors = to_tensors(out.images);

  if (config.normalization == Normalization::WN) {
    std::vector<std::size_t> all(m.entries.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    out.stats = standardize_subset(m, out.tensors, all);
  }

  out.analysis_csv = homogeneity_csv_header();
  for (std::size_t i = 0; i < m.entries.size(); ++i) {
    const auto& name = m.entries[i].path;
    out.analysis_csv += homogeneity_csv_rows(name, "original", analyze_raster(processed.originals[i]));
    out.analysis_csv += homogeneity_csv_rows(name, "processed", analyze_raster(out.images[i]));
  }

  if (out_dir) {
    nlohmann::json index = nlohmann::json::array();
    for (std::size_t i = 0; i < m.entries.size(); ++i) {
      const auto& e = m.entries[i];
      const std::string stem = index_name(i);
      save_image(*out_dir / "images" / (stem + ".png"), out.images[i]);
      save_tensor(*out_dir / "tensors" / (stem + ".fpp"), out.tensors[i]);
      index.push_back({{"index", i},
                       {"path", e.path},
                       {"class", e.class_index},
                       {"split", std::string(to_string(e.split))},
                       {"image", "images/" + stem + ".png"},
                       {"tensor", "tensors/" + stem + ".fpp"}});
    }
    save_manifest(*out_dir / "manifest.json", m);
    write_text(*out_dir / "index.json", index.dump(2) + "\n");
    write_text(*out_dir / "analysis.csv", out.analysis_csv);
    if (out.stats) {
      nlohmann::json js{{"mean", out.stats->mean}, {"std", out.stats->std}};
      write_text(*out_dir / "stats.json", js.dump(2) + "\n");
    }
  }
  return out;
}

SplitFeatures features_by_split(const DatasetManifest& m, std::span<const TensorF32> tensors, int pool) {
  SplitFeatures f;
  for (std::size_t i = 0; i < m.entries.size(); ++i) {
    const auto& e = m.entries[i];
    const auto x = extract_features(tensors[i], pool);
    switch (e.split) {
      case Split::TRAIN: f.train.add(x, e.class_index); break;
      case Split::VAL: f.val.add(x, e.class_index); break;
      case Split::TEST: f.test.add(x, e.class_index); break;
      case Split::UNASSIGNED: break;
    }
  }
  return f;
}

std::string feature_proxy_note(int pool) {
  return "feature proxy: " + std::to_string(pool) + "x" + std::to_string(pool) +
         " average-pool flatten + softmax regression (not Inception-V3 transfer features); "
         "accuracies are not comparable with transfer-learning results";
}

namespace {

std::string utc_now() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

RunReport run_grid(const DatasetManifest& manifest, const GridConfig& grid) {
  RunReport report;
  report.seed = grid.base.seed;
  report.feature_note = feature_proxy_note(grid.base.pool);
  report.started_at = utc_now();

  // originals occupy [0, n0) of the augmented manifest; augments follow
  const DatasetManifest augmented = with_translation_augments(manifest, grid.base.shift);
  const std::size_t n0 = manifest.entries.size();

  for (const auto& p : grid.preprocessors) {
    ReportRow row;
    row.name = p.name;
    row.available = p.available;
    if (!p.available) {
      report.rows.push_back(std::move(row));
      continue;
    }
    std::vector<StageSpec> stages = p.stages;
    stages.insert(stages.end(), grid.tail.begin(), grid.tail.end());
    const auto processed = process_entries(augmented, stages, false);
    const auto unit = to_tensors(processed.images);

    for (auto setup : kSetups) {
      const bool wa = setup == Setup::WA_WN || setup == Setup::WA_NN;
      const bool wn = setup == Setup::WA_WN || setup == Setup::NA_WN;
      const std::size_t n = wa ? augmented.entries.size() : n0;
      DatasetManifest cell_manifest = augmented;
      cell_manifest.entries.resize(n);
      std::vector<TensorF32> tensors(unit.begin(), unit.begin() + std::ptrdiff_t(n));
      if (wn) {
        std::vector<std::size_t> all(n);
        for (std::size_t i = 0; i < n; ++i) all[i] = i;
        standardize_subset(cell_manifest, tensors, all);
      }
      const auto feats = features_by_split(cell_manifest, tensors, grid.base.pool);
      if (feats.test.empty()) throw Error(Errc::EmptySplit, "grid needs a non-empty TEST split");
      const auto result = train(feats.train, feats.val, static_cast<int>(manifest.classes.size()), grid.base.train);
      row.top1[std::size_t(setup)] = evaluate(result.model, feats.test);
      ++report.training_runs;
    }
    report.rows.push_back(std::move(row));
  }
  report.finished_at = utc_now();
  return report;
}

}  // namespace fpp
