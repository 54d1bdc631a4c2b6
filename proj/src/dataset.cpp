#include "fpp/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "fpp/error.hpp"
#include "fpp/image_io.hpp"
#include "fpp/rng.hpp"
#include "json.hpp"

namespace fpp {

namespace fs = std::filesystem;
using nlohmann::json;

std::string_view to_string(Split s) noexcept {
  switch (s) {
    case Split::UNASSIGNED: return "UNASSIGNED";
    case Split::TRAIN: return "TRAIN";
    case Split::VAL: return "VAL";
    case Split::TEST: return "TEST";
  }
  return "UNASSIGNED";
}

Split parse_split(std::string_view s) {
  if (s == "TRAIN" || s == "train") return Split::TRAIN;
  if (s == "VAL" || s == "val") return Split::VAL;
  if (s == "TEST" || s == "test") return Split::TEST;
  if (s == "UNASSIGNED") return Split::UNASSIGNED;
  throw Error(Errc::ParseError, "unknown split '" + std::string(s) + "'");
}

void SplitRatios::validate() const {
  if (train < 0 || val < 0 || test < 0) throw Error(Errc::InvalidParam, "split ratios must be non-negative");
  if (std::fabs(train + val + test - 1.0) > 1e-9) throw Error(Errc::InvalidParam, "split ratios must sum to 1");
}

fs::path DatasetManifest::resolve(const ManifestEntry& e) const {
  const auto& p = e.derived_from ? *e.derived_from : e.path;
  return fs::path(root) / p;
}

std::vector<int> DatasetManifest::class_sizes() const {
  std::vector<int> n(classes.size(), 0);
  for (const auto& e : entries)
    if (!e.derived_from) ++n[std::size_t(e.class_index)];
  return n;
}

std::size_t DatasetManifest::count(Split s) const {
  return std::size_t(std::count_if(entries.begin(), entries.end(), [s](const auto& e) { return e.split == s; }));
}

void DatasetManifest::validate() const {
  ratios.validate();
  for (const auto& e : entries)
    if (e.class_index < 0 || std::size_t(e.class_index) >= classes.size())
      throw Error(Errc::ParseError, "entry '" + e.path + "' has class index out of range");
}

DatasetManifest ingest_directory(const fs::path& root) {
  std::error_code ec;
  if (!fs::is_directory(root, ec)) throw Error(Errc::UnreadablePath, "not a directory: " + root.string());

  std::vector<std::string> class_dirs;
  for (const auto& d : fs::directory_iterator(root, ec))
    if (d.is_directory()) class_dirs.push_back(d.path().filename().string());
  if (ec) throw Error(Errc::UnreadablePath, root.string() + ": " + ec.message());
  std::sort(class_dirs.begin(), class_dirs.end());

  DatasetManifest m;
  m.root = root.string();
  for (const auto& name : class_dirs) {
    std::vector<std::string> files;
    for (const auto& f : fs::recursive_directory_iterator(root / name, ec)) {
      if (!f.is_regular_file() || !format_from_extension(f.path())) continue;
      files.push_back(fs::relative(f.path(), root).generic_string());
    }
    if (ec) throw Error(Errc::UnreadablePath, (root / name).string() + ": " + ec.message());
    if (files.empty()) continue;
    const int idx = static_cast<int>(m.classes.size());
    m.classes.push_back(name);
    for (auto& f : files) m.entries.push_back({std::move(f), idx, Split::UNASSIGNED, std::nullopt, {}});
  }
  if (m.entries.empty()) throw Error(Errc::EmptyDataset, "no images under " + root.string());
  std::sort(m.entries.begin(), m.entries.end(), [](const auto& a, const auto& b) { return a.path < b.path; });
  return m;
}

DatasetManifest filter_min_images(const DatasetManifest& m, int threshold) {
  if (threshold < 1) throw Error(Errc::InvalidParam, "min-images threshold must be >= 1");
  const auto sizes = m.class_sizes();
  DatasetManifest out;
  out.root = m.root;
  out.seed = m.seed;
  out.ratios = m.ratios;
  std::vector<int> remap(m.classes.size(), -1);
  for (std::size_t c = 0; c < m.classes.size(); ++c) {
    if (sizes[c] > threshold) {
      remap[c] = static_cast<int>(out.classes.size());
      out.classes.push_back(m.classes[c]);
    }
  }
  if (out.classes.empty())
    throw Error(Errc::NoClassesRemain, "no class has more than " + std::to_string(threshold) + " images");
  for (const auto& e : m.entries) {
    const int c = remap[std::size_t(e.class_index)];
    if (c < 0) continue;
    auto copy = e;
    copy.class_index = c;
    out.entries.push_back(std::move(copy));
  }
  return out;
}

SplitCounts split_counts_for(int n, const SplitRatios& ratios) {
  // the epsilon absorbs representation error such as 0.05*100 = 5.000000000000001 or 4.99..
  const int val = static_cast<int>(std::floor(ratios.val * n + 1e-9));
  const int test = static_cast<int>(std::floor(ratios.test * n + 1e-9));
  return {n - val - test, val, test};
}

DatasetManifest split(const DatasetManifest& m, const SplitRatios& ratios, std::uint64_t seed) {
  ratios.validate();
  DatasetManifest out = m;
  out.seed = seed;
  out.ratios = ratios;

  std::vector<std::vector<std::size_t>> by_class(m.classes.size());
  for (std::size_t i = 0; i < m.entries.size(); ++i)
    if (!m.entries[i].derived_from) by_class[std::size_t(m.entries[i].class_index)].push_back(i);

  std::map<std::string, Split> assigned;
  for (std::size_t c = 0; c < by_class.size(); ++c) {
    auto& idx = by_class[c];
    const int n = static_cast<int>(idx.size());
    if (n < 3)
      throw Error(Errc::ClassTooSmall, "class '" + m.classes[c] + "' has " + std::to_string(n) + " images (< 3)");
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return m.entries[a].path < m.entries[b].path; });
    SplitMix64 rng(seed ^ fnv1a64(m.classes[c]));
    shuffle(idx, rng);
    const SplitCounts counts = split_counts_for(n, ratios);
    for (int k = 0; k < n; ++k) {
      const Split s = k < counts.val ? Split::VAL : k < counts.val + counts.test ? Split::TEST : Split::TRAIN;
      out.entries[idx[std::size_t(k)]].split = s;
      assigned[m.entries[idx[std::size_t(k)]].path] = s;
    }
  }
  for (auto& e : out.entries)
    if (e.derived_from) {
      auto it = assigned.find(*e.derived_from);
      e.split = it == assigned.end() ? Split::UNASSIGNED : it->second;
    }
  return out;
}

std::vector<SplitCounts> per_class_split_counts(const DatasetManifest& m) {
  std::vector<SplitCounts> out(m.classes.size());
  for (const auto& e : m.entries) {
    auto& c = out[std::size_t(e.class_index)];
    switch (e.split) {
      case Split::TRAIN: ++c.train; break;
      case Split::VAL: ++c.val; break;
      case Split::TEST: ++c.test; break;
      case Split::UNASSIGNED: break;
    }
  }
  return out;
}

DatasetManifest with_translation_augments(const DatasetManifest& m, int shift) {
  DatasetManifest out = m;
  const std::string d = std::to_string(shift);
  // same order as translate_augment
  const std::string transforms[4] = {"shift:+" + d + ",0", "shift:-" + d + ",0", "shift:0,+" + d,
                                     "shift:0,-" + d};
  for (const auto& e : m.entries) {
    if (e.split != Split::TRAIN || e.derived_from) continue;
    for (const auto& t : transforms) out.entries.push_back({e.path + "#" + t, e.class_index, Split::TRAIN, e.path, t});
  }
  return out;
}

std::string serialize_manifest(const DatasetManifest& m) {
  json j;
  j["format"] = "fpp-manifest";
  j["version"] = 1;
  j["root"] = m.root;
  j["seed"] = m.seed;
  j["ratios"] = {m.ratios.train, m.ratios.val, m.ratios.test};
  j["classes"] = m.classes;
  json entries = json::array();
  for (const auto& e : m.entries) {
    json je{{"path", e.path}, {"class", e.class_index}, {"split", std::string(to_string(e.split))}};
    if (e.derived_from) je["derived_from"] = *e.derived_from;
    if (!e.transform.empty()) je["transform"] = e.transform;
    entries.push_back(std::move(je));
  }
  j["entries"] = std::move(entries);
  return j.dump(2) + "\n";
}

DatasetManifest parse_manifest(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, std::string("manifest: ") + e.what());
  }
  try {
    if (j.at("format") != "fpp-manifest") throw Error(Errc::ParseError, "not an fpp-manifest");
    if (j.at("version") != 1) throw Error(Errc::ParseError, "unsupported manifest version");
    DatasetManifest m;
    m.root = j.at("root").get<std::string>();
    m.seed = j.at("seed").get<std::uint64_t>();
    const auto& r = j.at("ratios");
    m.ratios = {r.at(0).get<double>(), r.at(1).get<double>(), r.at(2).get<double>()};
    m.classes = j.at("classes").get<std::vector<std::string>>();
    for (const auto& je : j.at("entries")) {
      ManifestEntry e;
      e.path = je.at("path").get<std::string>();
      e.class_index = je.at("class").get<int>();
      e.split = parse_split(je.at("split").get<std::string>());
      if (je.contains("derived_from")) e.derived_from = je["derived_from"].get<std::string>();
      if (je.contains("transform")) e.transform = je["transform"].get<std::string>();
      m.entries.push_back(std::move(e));
    }
    m.validate();
    return m;
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, std::string("manifest: ") + e.what());
  }
}

void save_manifest(const fs::path& p, const DatasetManifest& m) {
  const std::string s = serialize_manifest(m);
  write_file(p, std::span(reinterpret_cast<const std::uint8_t*>(s.data()), s.size()));
}

DatasetManifest load_manifest(const fs::path& p) {
  const auto bytes = read_file(p);
  return parse_manifest(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

}  // namespace fpp
