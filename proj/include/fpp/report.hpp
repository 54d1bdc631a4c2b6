#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fpp {

/// Column order of the accuracy grid.
enum class Setup { WA_WN = 0, WA_NN = 1, NA_WN = 2, NA_NN = 3 };
inline constexpr std::array<Setup, 4> kSetups = {Setup::WA_WN, Setup::WA_NN, Setup::NA_WN, Setup::NA_NN};
std::string_view setup_label(Setup s) noexcept;  // "WA & WN", ...

inline constexpr std::string_view kFeatureProxyNote =
    "feature proxy: 32x32 average-pool flatten + softmax regression (not Inception-V3 transfer features); "
    "accuracies are not comparable with transfer-learning results";

/// A printed mean disagreeing with the recomputed one by more than this is flagged.
inline constexpr double kMeanTolerance = 5e-5;

struct ReportRow {
  std::string name;
  bool available = true;
  std::array<double, 4> top1{};         // indexed by Setup
  std::optional<double> printed_mean;   // only for externally supplied tables

  /// Arithmetic mean of the four cells; always recomputed.
  double mean() const noexcept;
  bool mean_discrepancy() const noexcept;
};

struct RunReport {
  std::vector<ReportRow> rows;
  std::uint64_t seed = 0;
  std::string feature_note{kFeatureProxyNote};
  int training_runs = 0;
  std::string started_at, finished_at;  // JSON metadata only, never rendered
};

enum class ReportFormat { CSV, Markdown };

/// 4-decimal fixed formatting ("72.7273").
std::string format_percent(double v);

/// One row per preprocessor: the four accuracies and the recomputed mean.
/// When any row carries a printed mean, "Printed mean" and "Mean check"
/// columns are added. The first line names the feature proxy.
std::string render_report(const RunReport& r, ReportFormat fmt);

/// Reads "name,WA & WN,WA & NN,NA & WN,NA & NN[,printed mean]" rows
/// (header line and '#' comments skipped).
RunReport parse_reference_csv(std::string_view text);

std::string report_to_json(const RunReport& r, bool include_timestamps = true);
RunReport report_from_json(std::string_view text);

}  // namespace fpp
