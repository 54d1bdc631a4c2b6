#include "fpp/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "fpp/error.hpp"
#include "json.hpp"

namespace fpp {

std::string_view setup_label(Setup s) noexcept {
  switch (s) {
    case Setup::WA_WN: return "WA & WN";
    case Setup::WA_NN: return "WA & NN";
    case Setup::NA_WN: return "NA & WN";
    case Setup::NA_NN: return "NA & NN";
  }
  return "?";
}

double ReportRow::mean() const noexcept { return (top1[0] + top1[1] + top1[2] + top1[3]) / 4.0; }

bool ReportRow::mean_discrepancy() const noexcept {
  return printed_mean && std::fabs(*printed_mean - mean()) > kMeanTolerance + 1e-9;
}

std::string format_percent(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::string render_report(const RunReport& r, ReportFormat fmt) {
  bool with_printed = false;
  for (const auto& row : r.rows) with_printed |= row.printed_mean.has_value();

  std::vector<std::string> header{"Preprocessor"};
  for (auto s : kSetups) header.push_back(std::string(setup_label(s)) + " (%)");
  header.push_back("Mean (%)");
  if (with_printed) {
    header.push_back("Printed mean (%)");
    header.push_back("Mean check");
  }

  std::vector<std::vector<std::string>> body;
  for (const auto& row : r.rows) {
    std::vector<std::string> cells{row.name};
    for (auto s : kSetups) cells.push_back(row.available ? format_percent(row.top1[std::size_t(s)]) : "unavailable");
    cells.push_back(row.available ? format_percent(row.mean()) : "unavailable");
    if (with_printed) {
      cells.push_back(row.printed_mean ? format_percent(*row.printed_mean) : "");
      cells.push_back(!row.printed_mean ? "" : row.mean_discrepancy() ? "MISMATCH" : "ok");
    }
    body.push_back(std::move(cells));
  }

  std::ostringstream os;
  if (fmt == ReportFormat::CSV) {
    os << "# " << r.feature_note << "\n";
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
      os << "\n";
    };
    line(header);
    for (const auto& b : body) line(b);
  } else {
    os << "> " << r.feature_note << "\n\n";
    auto line = [&](const std::vector<std::string>& cells) {
      os << "|";
      for (const auto& c : cells) os << " " << c << " |";
      os << "\n";
    };
    line(header);
    os << "|";
    for (std::size_t i = 0; i < header.size(); ++i) os << (i == 0 ? " --- |" : " ---: |");
    os << "\n";
    for (const auto& b : body) line(b);
  }
  return os.str();
}

namespace {

std::vector<std::string> split_csv(std::string_view line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  out.push_back(cur);
  for (auto& s : out) {
    const auto b = s.find_first_not_of(' ');
    const auto e = s.find_last_not_of(' ');
    s = b == std::string::npos ? "" : s.substr(b, e - b + 1);
  }
  return out;
}

double parse_cell(const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(Errc::ParseError, "not a number: '" + s + "'");
  }
}

}  // namespace

RunReport parse_reference_csv(std::string_view text) {
  RunReport r;
  r.feature_note = "reference table supplied as input; means recomputed from its cells";
  std::istringstream is{std::string(text)};
  std::string line;
  bool header_seen = false;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto cells = split_csv(line);
    if (!header_seen) {
      header_seen = true;
      if (!cells.empty() && cells[0] == "Preprocessor") continue;
    }
    if (cells.size() != 5 && cells.size() != 6)
      throw Error(Errc::ParseError, "reference row needs 5 or 6 fields: '" + line + "'");
    ReportRow row;
    row.name = cells[0];
    if (cells[1] == "unavailable") {
      row.available = false;
    } else {
      for (std::size_t i = 0; i < 4; ++i) row.top1[i] = parse_cell(cells[i + 1]);
      if (cells.size() == 6 && !cells[5].empty()) row.printed_mean = parse_cell(cells[5]);
    }
    r.rows.push_back(std::move(row));
  }
  return r;
}

std::string report_to_json(const RunReport& r, bool include_timestamps) {
  nlohmann::json j;
  j["format"] = "fpp-report";
  j["version"] = 1;
  j["seed"] = r.seed;
  j["feature_note"] = r.feature_note;
  j["training_runs"] = r.training_runs;
  if (include_timestamps) {
    j["started_at"] = r.started_at;
    j["finished_at"] = r.finished_at;
  }
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : r.rows) {
    nlohmann::json jr{{"name", row.name}, {"available", row.available}};
    if (row.available) {
      jr["top1"] = row.top1;
      jr["mean"] = row.mean();
    }
    if (row.printed_mean) jr["printed_mean"] = *row.printed_mean;
    rows.push_back(std::move(jr));
  }
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

RunReport report_from_json(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    if (j.at("format") != "fpp-report" || j.at("version") != 1) throw Error(Errc::ParseError, "not an fpp-report v1");
    RunReport r;
    r.seed = j.at("seed").get<std::uint64_t>();
    r.feature_note = j.at("feature_note").get<std::string>();
    r.training_runs = j.at("training_runs").get<int>();
    r.started_at = j.value("started_at", "");
    r.finished_at = j.value("finished_at", "");
    for (const auto& jr : j.at("rows")) {
      ReportRow row;
      row.name = jr.at("name").get<std::string>();
      row.available = jr.at("available").get<bool>();
      if (row.available) row.top1 = jr.at("top1").get<std::array<double, 4>>();
      if (jr.contains("printed_mean")) row.printed_mean = jr["printed_mean"].get<double>();
      r.rows.push_back(std::move(row));
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, std::string("report: ") + e.what());
  }
}

}  // namespace fpp
