// fpp: face preprocessing pipeline command line.
//
//   fpp ingest <root> [--min-images N] [--out manifest.json]
//   fpp split <manifest> [--seed S] [--ratios 0.70,0.05,0.25] [--out manifest.json]
//   fpp preprocess <manifest|dir> --config pipeline.cfg --out <dir>
//   fpp analyze <image>... [--out analysis.csv]
//   fpp train <manifest|dir> --config pipeline.cfg --out <model dir>
//   fpp evaluate <manifest|dir> --config pipeline.cfg --model <model dir>
//   fpp grid <manifest|dir> --config grid.cfg [--out <dir>]
//   fpp report <report.json|table.csv> [--format csv|markdown]
//   fpp synth --out <dir> [--classes N] [--per-class N] [--size N]
//
// Exit codes: 0 success, 1 usage error, 2 data error.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fpp/analysis.hpp"
#include "fpp/classifier.hpp"
#include "fpp/config.hpp"
#include "fpp/dataset.hpp"
#include "fpp/error.hpp"
#include "fpp/image_io.hpp"
#include "fpp/kernels.hpp"
#include "fpp/pipeline.hpp"
#include "fpp/report.hpp"
#include "fpp/synth.hpp"

namespace fs = std::filesystem;
using namespace fpp;

namespace {

// LFW figures after the >50 filter; a different result is logged, not forced.
constexpr int kReferenceClasses = 10;
constexpr std::size_t kReferenceImages = 1456;

std::string read_text(const fs::path& p) {
  const auto bytes = read_file(p);
  return {bytes.begin(), bytes.end()};
}

void write_text(const fs::path& p, const std::string& s) {
  write_file(p, std::span(reinterpret_cast<const std::uint8_t*>(s.data()), s.size()));
}

void emit(const std::optional<std::string>& out, const std::string& text) {
  if (out)
    write_text(*out, text);
  else
    std::cout << text;
}

SplitRatios parse_ratios(const std::string& s) {
  SplitRatios r;
  char tail = 0;
  if (std::sscanf(s.c_str(), "%lf,%lf,%lf%c", &r.train, &r.val, &r.test, &tail) != 3)
    throw Error(Errc::InvalidParam, "--ratios expects train,val,test");
  r.validate();
  return r;
}

void print_split_counts(const DatasetManifest& m) {
  const auto counts = per_class_split_counts(m);
  std::printf("%-32s %6s %6s %6s %6s\n", "class", "train", "val", "test", "total");
  SplitCounts sum;
  for (std::size_t c = 0; c < counts.size(); ++c) {
    const auto& k = counts[c];
    std::printf("%-32s %6d %6d %6d %6d\n", m.classes[c].c_str(), k.train, k.val, k.test, k.train + k.val + k.test);
    sum.train += k.train;
    sum.val += k.val;
    sum.test += k.test;
  }
  const int total = sum.train + sum.val + sum.test;
  std::printf("%-32s %6d %6d %6d %6d\n", "all", sum.train, sum.val, sum.test, total);
  if (total > 0)
    std::printf("fractions: train %.4f  val %.4f  test %.4f\n", double(sum.train) / total, double(sum.val) / total,
                double(sum.test) / total);
}

// A manifest file, or a dataset directory ingested on the fly. Unsplit
// manifests are split with the config's seed and ratios.
DatasetManifest dataset_input(const std::string& input, std::uint64_t seed, const SplitRatios& ratios) {
  DatasetManifest m = fs::is_directory(input) ? ingest_directory(input) : load_manifest(input);
  if (m.count(Split::UNASSIGNED) == m.entries.size()) m = split(m, ratios, seed);
  return m;
}

struct Globals {
  int threads = 0;
  std::optional<std::uint64_t> seed;
};

template <class Config>
void apply_seed(const Globals& g, Config& c) {
  if (g.seed) {
    c.seed = *g.seed;
    c.train.seed = *g.seed;
  }
}

PipelineConfig load_pipeline_config(const std::string& path, const Globals& g) {
  PipelineConfig c = parse_config(read_text(path));
  apply_seed(g, c);
  return c;
}

int run(int argc, char** argv) {
  CLI::App app{"Face preprocessing pipeline: ingest, split, preprocess, analyze, train, evaluate, grid, report"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  std::uint64_t seed_flag = 0;
  app.add_option("--threads", g.threads, "worker threads (default: available parallelism)")->check(CLI::NonNegativeNumber);
  auto* seed_opt = app.add_option("--seed", seed_flag, "seed overriding the config / manifest seed");

  std::string input, config_path, model_dir, format = "markdown", ratios_text = "0.70,0.05,0.25";
  std::optional<std::string> out;
  std::vector<std::string> images;
  int min_images = kDefaultMinImages;
  SynthOptions synth_opt;

  auto* ingest = app.add_subcommand("ingest", "scan a one-directory-per-person tree into a manifest");
  ingest->add_option("root", input)->required();
  ingest->add_option("--min-images", min_images, "keep classes with strictly more images")->check(CLI::PositiveNumber);
  ingest->add_option("--out", out, "manifest file (default: stdout)");

  auto* split_cmd = app.add_subcommand("split", "stratified train/val/test split");
  split_cmd->add_option("manifest", input)->required();
  split_cmd->add_option("--ratios", ratios_text, "train,val,test fractions");
  split_cmd->add_option("--out", out, "manifest file (default: overwrite input)");

  auto* preprocess = app.add_subcommand("preprocess", "run a pipeline config and write images and tensors");
  preprocess->add_option("input", input, "manifest file or dataset directory")->required();
  preprocess->add_option("--config", config_path)->required();
  preprocess->add_option("--out", out)->required();

  auto* analyze = app.add_subcommand("analyze", "homogeneity and bit-depth rows for images");
  analyze->add_option("images", images)->required();
  analyze->add_option("--out", out, "CSV file (default: stdout)");

  auto* train_cmd = app.add_subcommand("train", "train the softmax classifier on a preprocessed dataset");
  train_cmd->add_option("input", input, "manifest file or dataset directory")->required();
  train_cmd->add_option("--config", config_path)->required();
  train_cmd->add_option("--out", out, "model directory")->required();

  auto* evaluate_cmd = app.add_subcommand("evaluate", "Top-1 accuracy of a saved model on the TEST split");
  evaluate_cmd->add_option("input", input, "manifest file or dataset directory")->required();
  evaluate_cmd->add_option("--config", config_path)->required();
  evaluate_cmd->add_option("--model", model_dir)->required();

  auto* grid = app.add_subcommand("grid", "run every preprocessor through WA/NA x WN/NN");
  grid->add_option("input", input, "manifest file or dataset directory")->required();
  grid->add_option("--config", config_path)->required();
  grid->add_option("--out", out, "directory for report.csv, report.md and report.json");

  auto* report = app.add_subcommand("report", "render a report JSON or a reference table CSV");
  report->add_option("file", input)->required();
  report->add_option("--format", format)->check(CLI::IsMember({"csv", "markdown"}));

  auto* synth = app.add_subcommand("synth", "write the seeded synthetic face dataset");
  synth->add_option("--out", out)->required();
  synth->add_option("--classes", synth_opt.classes)->check(CLI::PositiveNumber);
  synth->add_option("--per-class", synth_opt.per_class)->check(CLI::PositiveNumber);
  synth->add_option("--size", synth_opt.size)->check(CLI::Range(8, 4096));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }
  if (*seed_opt) g.seed = seed_flag;
  if (g.threads > 0) kernels::set_thread_count(g.threads);

  if (*ingest) {
    DatasetManifest m = filter_min_images(ingest_directory(input), min_images);
    std::fprintf(stderr, "ingest: %zu classes, %zu images with more than %d images per class\n", m.classes.size(),
                 m.entries.size(), min_images);
    if (min_images == kDefaultMinImages &&
        (m.classes.size() != std::size_t(kReferenceClasses) || m.entries.size() != kReferenceImages))
      std::fprintf(stderr, "ingest: note: differs from the reference selection of %d classes / %zu images\n",
                   kReferenceClasses, kReferenceImages);
    emit(out, serialize_manifest(m));
  } else if (*split_cmd) {
    const DatasetManifest m = split(load_manifest(input), parse_ratios(ratios_text), g.seed.value_or(0));
    save_manifest(out.value_or(input), m);
    print_split_counts(m);
  } else if (*preprocess) {
    const PipelineConfig c = load_pipeline_config(config_path, g);
    const auto result = run_pipeline(dataset_input(input, c.seed, c.ratios), c, fs::path(*out));
    std::printf("preprocess: %zu images -> %s\n", result.images.size(), out->c_str());
  } else if (*analyze) {
    std::string csv = homogeneity_csv_header();
    for (const auto& p : images) csv += homogeneity_csv_rows(p, "original", analyze_raster(load_image(p)));
    emit(out, csv);
  } else if (*train_cmd) {
    const PipelineConfig c = load_pipeline_config(config_path, g);
    const auto data = run_pipeline(dataset_input(input, c.seed, c.ratios), c);
    const auto f = features_by_split(data.manifest, data.tensors, c.pool);
    const auto r = train(f.train, f.val, static_cast<int>(data.manifest.classes.size()), c.train);
    save_model(*out, r.model, c.train, data.manifest.classes);
    std::printf("train: %zu samples, %ld iterations, loss %.6f -> %.6f, ", f.train.size(), r.iterations, r.initial_loss,
                r.final_loss);
    if (r.best_epoch < 0)
      std::printf("no VAL split, final model kept\n");
    else
      std::printf("best epoch %d (val top-1 %s)\n", r.best_epoch, format_percent(r.best_val_top1).c_str());
  } else if (*evaluate_cmd) {
    const PipelineConfig c = load_pipeline_config(config_path, g);
    const auto data = run_pipeline(dataset_input(input, c.seed, c.ratios), c);
    const auto f = features_by_split(data.manifest, data.tensors, c.pool);
    if (f.test.empty()) throw Error(Errc::EmptySplit, "no TEST entries to evaluate");
    const SoftmaxModel model = load_model(model_dir);
    std::printf("evaluate: top-1 %s on %zu TEST samples\n", format_percent(evaluate(model, f.test)).c_str(),
                f.test.size());
  } else if (*grid) {
    GridConfig gc = parse_grid_config(read_text(config_path));
    apply_seed(g, gc.base);
    gc.base.validate();
    const RunReport r = run_grid(dataset_input(input, gc.base.seed, gc.base.ratios), gc);
    const std::string md = render_report(r, ReportFormat::Markdown);
    if (out) {
      fs::create_directories(*out);
      write_text(fs::path(*out) / "report.csv", render_report(r, ReportFormat::CSV));
      write_text(fs::path(*out) / "report.md", md);
      write_text(fs::path(*out) / "report.json", report_to_json(r) + "\n");
    }
    std::cout << md;
    std::fprintf(stderr, "grid: %d training runs\n", r.training_runs);
  } else if (*report) {
    const std::string text = read_text(input);
    const RunReport r = fs::path(input).extension() == ".json" ? report_from_json(text) : parse_reference_csv(text);
    std::cout << render_report(r, format == "csv" ? ReportFormat::CSV : ReportFormat::Markdown);
    for (const auto& row : r.rows)
      if (row.mean_discrepancy())
        std::fprintf(stderr, "report: %s printed mean %s, recomputed %s\n", row.name.c_str(),
                     format_percent(*row.printed_mean).c_str(), format_percent(row.mean()).c_str());
  } else if (*synth) {
    if (g.seed) synth_opt.seed = *g.seed;
    write_synthetic_dataset(*out, synth_opt);
    std::printf("synth: %d classes x %d images (%dx%d) -> %s\n", synth_opt.classes, synth_opt.per_class, synth_opt.size,
                synth_opt.size, out->c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Error& e) {
    std::fprintf(stderr, "fpp: %s: %s\n", std::string(errc_name(e.code())).c_str(), e.what());
    return is_usage_error(e.code()) ? 1 : 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "fpp: %s\n", e.what());
    return 2;
  }
}
