#include "fpp/config.hpp"

#include <charconv>
#include <sstream>

#include "fpp/error.hpp"
#include "fpp/quantize.hpp"

namespace fpp {

namespace {

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream is{std::string(s)};
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(std::string_view s, std::string_view what) {
  T v{};
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    throw Error(Errc::InvalidParam, std::string(what) + ": not a number: '" + std::string(s) + "'");
  return v;
}

struct StageName {
  std::string_view name;
  StageKind kind;
};
constexpr StageName kStageNames[] = {
    {"resize", StageKind::Resize},          {"to_hsv", StageKind::ToHsv},
    {"to_lab", StageKind::ToLab},           {"to_ycbcr", StageKind::ToYcbcr},
    {"quantize_full", StageKind::QuantizeFull}, {"quantize_plane", StageKind::QuantizePlane},
    {"hist_eq", StageKind::HistEq},         {"lcn", StageKind::Lcn},
};

std::string_view stage_name(StageKind k) {
  for (const auto& s : kStageNames)
    if (s.kind == k) return s.name;
  return "?";
}

void validate_stage(const StageSpec& s) {
  switch (s.kind) {
    case StageKind::Resize:
      if (s.width < 1 || s.height < 1) throw Error(Errc::InvalidParam, "resize: width and height must be >= 1");
      break;
    case StageKind::QuantizeFull:
    case StageKind::QuantizePlane:
      if (s.levels < 1 || s.levels > kMaxLevels)
        throw Error(Errc::InvalidParam, std::string(stage_name(s.kind)) + ": levels must be in [1,254]");
      break;
    case StageKind::Lcn:
      try {
        s.lcn.validate();
      } catch (const Error& e) {
        throw Error(Errc::InvalidParam, e.what());
      }
      break;
    default: break;
  }
}

}  // namespace

std::string StageSpec::to_text() const {
  std::ostringstream os;
  os << stage_name(kind);
  switch (kind) {
    case StageKind::Resize: os << " width=" << width << " height=" << height; break;
    case StageKind::QuantizeFull:
    case StageKind::QuantizePlane: os << " levels=" << levels; break;
    case StageKind::Lcn: os << " window=" << lcn.window << " sigma=" << lcn.sigma << " eps=" << lcn.eps; break;
    default: break;
  }
  return os.str();
}

StageSpec parse_stage(std::string_view text) {
  const auto toks = split_ws(text);
  if (toks.empty()) throw Error(Errc::ParseError, "empty stage");
  StageSpec s;
  bool known = false;
  for (const auto& n : kStageNames)
    if (n.name == toks[0]) s.kind = n.kind, known = true;
  if (!known) throw Error(Errc::UnknownStage, "unknown stage '" + toks[0] + "'");

  bool have_levels = false, have_sigma = false;
  for (std::size_t i = 1; i < toks.size(); ++i) {
    const auto eq = toks[i].find('=');
    if (eq == std::string::npos) throw Error(Errc::ParseError, "expected key=value, got '" + toks[i] + "'");
    const std::string key = toks[i].substr(0, eq);
    const std::string_view val = std::string_view(toks[i]).substr(eq + 1);
    const std::string where = toks[0] + "." + key;
    if (s.kind == StageKind::Resize && key == "width") {
      s.width = parse_number<int>(val, where);
    } else if (s.kind == StageKind::Resize && key == "height") {
      s.height = parse_number<int>(val, where);
    } else if ((s.kind == StageKind::QuantizeFull || s.kind == StageKind::QuantizePlane) && key == "levels") {
      s.levels = parse_number<int>(val, where);
      have_levels = true;
    } else if (s.kind == StageKind::Lcn && key == "window") {
      s.lcn.window = parse_number<int>(val, where);
    } else if (s.kind == StageKind::Lcn && key == "sigma") {
      s.lcn.sigma = parse_number<double>(val, where);
      have_sigma = true;
    } else if (s.kind == StageKind::Lcn && key == "eps") {
      s.lcn.eps = parse_number<double>(val, where);
    } else {
      throw Error(Errc::InvalidParam, "stage " + toks[0] + " has no parameter '" + key + "'");
    }
  }
  if ((s.kind == StageKind::QuantizeFull || s.kind == StageKind::QuantizePlane) && !have_levels)
    throw Error(Errc::InvalidParam, toks[0] + " requires levels=<n>");
  if (s.kind == StageKind::Lcn && !have_sigma) s.lcn.sigma = s.lcn.window / 4.0;
  validate_stage(s);
  return s;
}

void PipelineConfig::validate() const {
  int conversions = 0;
  for (const auto& s : stages) {
    validate_stage(s);
    conversions += s.is_color_conversion();
  }
  if (conversions > 1) throw Error(Errc::InvalidParam, "at most one colour-space conversion per pipeline");
  ratios.validate();
  train.adam.validate();
  if (train.epochs < 1 || train.batch_size < 1) throw Error(Errc::InvalidParam, "epochs and batch must be >= 1");
  if (pool < 1) throw Error(Errc::InvalidParam, "pool must be >= 1");
  if (shift < 1) throw Error(Errc::InvalidParam, "shift must be >= 1");
}

namespace {

// Applies one "key value..." line to the shared settings; false if the
// key is not a shared setting.
bool apply_common(PipelineConfig& c, const std::string& key, const std::vector<std::string>& args) {
  auto one = [&]() -> const std::string& {
    if (args.size() != 1) throw Error(Errc::ParseError, key + " takes exactly one value");
    return args[0];
  };
  if (key == "augmentation") {
    const auto& v = one();
    if (v == "WA") c.augmentation = Augmentation::WA;
    else if (v == "NA") c.augmentation = Augmentation::NA;
    else throw Error(Errc::InvalidParam, "augmentation must be WA or NA");
  } else if (key == "normalization") {
    const auto& v = one();
    if (v == "WN") c.normalization = Normalization::WN;
    else if (v == "NN") c.normalization = Normalization::NN;
    else throw Error(Errc::InvalidParam, "normalization must be WN or NN");
  } else if (key == "seed") {
    c.seed = parse_number<std::uint64_t>(one(), key);
    c.train.seed = c.seed;
  } else if (key == "ratios") {
    if (args.size() != 3) throw Error(Errc::ParseError, "ratios takes three values");
    c.ratios = {parse_number<double>(args[0], key), parse_number<double>(args[1], key), parse_number<double>(args[2], key)};
  } else if (key == "epochs") {
    c.train.epochs = parse_number<int>(one(), key);
  } else if (key == "batch") {
    c.train.batch_size = parse_number<int>(one(), key);
  } else if (key == "max_iterations") {
    c.train.max_iterations = parse_number<long>(one(), key);
  } else if (key == "gamma") {
    c.train.adam.gamma = parse_number<double>(one(), key);
  } else if (key == "lr0") {
    c.train.adam.lr0 = parse_number<double>(one(), key);
  } else if (key == "lr_floor") {
    c.train.adam.lr_floor = parse_number<double>(one(), key);
  } else if (key == "decay_step") {
    c.train.adam.decay_step = parse_number<int>(one(), key);
  } else if (key == "pool") {
    c.pool = parse_number<int>(one(), key);
  } else if (key == "shift") {
    c.shift = parse_number<int>(one(), key);
  } else {
    return false;
  }
  return true;
}

template <class OnLine>
void for_each_line(std::string_view text, OnLine&& on_line) {
  std::size_t lineno = 0;
  bool first = true;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto sp = line.find_first_of(" \t");
    const std::string key(line.substr(0, sp));
    const std::string_view rest = sp == std::string_view::npos ? std::string_view{} : trim(line.substr(sp));
    if (first && key == "fpp-config") {
      if (rest != "1") throw Error(Errc::ParseError, "unsupported config version '" + std::string(rest) + "'");
      first = false;
      continue;
    }
    first = false;
    try {
      on_line(key, rest);
    } catch (const Error& e) {
      throw Error(e.code(), "line " + std::to_string(lineno) + ": " + e.what());
    }
  }
}

}  // namespace

PipelineConfig parse_config(std::string_view text) {
  PipelineConfig c;
  for_each_line(text, [&](const std::string& key, std::string_view rest) {
    if (key == "stage") {
      c.stages.push_back(parse_stage(rest));
    } else if (!apply_common(c, key, split_ws(rest))) {
      throw Error(Errc::ParseError, "unknown key '" + key + "'");
    }
  });
  c.validate();
  return c;
}

GridConfig parse_grid_config(std::string_view text) {
  GridConfig g;
  for_each_line(text, [&](const std::string& key, std::string_view rest) {
    if (key == "tail") {
      g.tail.push_back(parse_stage(rest));
    } else if (key == "preprocessor") {
      const auto sp = rest.find_first_of(" \t");
      PreprocessorSpec p;
      p.name = std::string(rest.substr(0, sp));
      if (p.name.empty()) throw Error(Errc::ParseError, "preprocessor needs a name");
      std::string_view stages = sp == std::string_view::npos ? std::string_view{} : trim(rest.substr(sp));
      if (stages == "unavailable") {
        p.available = false;
      } else {
        while (!stages.empty()) {
          const auto semi = stages.find(';');
          const auto part = trim(stages.substr(0, semi));
          if (!part.empty()) p.stages.push_back(parse_stage(part));
          stages = semi == std::string_view::npos ? std::string_view{} : stages.substr(semi + 1);
        }
      }
      g.preprocessors.push_back(std::move(p));
    } else if (key == "stage") {
      throw Error(Errc::ParseError, "grid configs use 'preprocessor' and 'tail', not 'stage'");
    } else if (!apply_common(g.base, key, split_ws(rest))) {
      throw Error(Errc::ParseError, "unknown key '" + key + "'");
    }
  });
  if (g.preprocessors.empty()) throw Error(Errc::ParseError, "grid config lists no preprocessors");
  g.base.validate();
  for (const auto& p : g.preprocessors) {
    PipelineConfig probe = g.base;
    probe.stages = p.stages;
    probe.stages.insert(probe.stages.end(), g.tail.begin(), g.tail.end());
    probe.validate();
  }
  return g;
}

std::string to_string(Augmentation a) { return a == Augmentation::WA ? "WA" : "NA"; }
std::string to_string(Normalization n) { return n == Normalization::WN ? "WN" : "NN"; }

}  // namespace fpp
