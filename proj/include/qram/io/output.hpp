#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qram/sim/metrics.hpp"
#include "qram/sim/safety.hpp"

namespace qram::io {

/// Version of the output file schemas (series.csv, summary.json, compare.csv,
/// plot CSVs). Bump on any header or key change.
inline constexpr int kOutputSchemaVersion = 1;

inline constexpr const char* kSeriesHeader = "run_id,t,metric,task_type,value";
inline constexpr const char* kCompareHeader =
    "mode,runs,track_error_median,track_error_q3,track_error_std,sar_window_error_median,sar_window_error_q3,"
    "sar_window_error_std,utility_median,utility_q3,utility_std,drops,safety_violations";
inline constexpr const char* kErrorOverTimeHeader = "mode,t,median,q3,std";
inline constexpr const char* kBoxHeader = "mode,n,min,whisker_low,q1,median,q3,whisker_high,max,mean,std";
inline constexpr const char* kUtilityByTypeHeader = "mode,t,task_type,median,q3,std";

/// Shortest text that reads back to the same double; "inf", "-inf", "nan" otherwise.
std::string format_number(double v);

struct RunMeta {
  std::string command;  ///< run or compare
  std::string scenario;
  std::vector<std::uint64_t> seeds;
  double epoch_s = 1.0;
  std::size_t mcts_iterations = 0;
};

/// Aggregates and safety scan of one mode.
struct ModeReport {
  sim::ModeSummary summary;
  sim::SafetyReport safety;
};

ModeReport make_report(const sim::ModeBatch& batch);

/// One row per epoch per metric: mean_track_error, utility (per task type),
/// total_utility, cumulative_utility, sar_active, timeline_end_s, drops.
std::string series_csv(std::span<const sim::MetricsSeries> runs);
std::string summary_json(const RunMeta& meta, std::span<const ModeReport> modes);
std::string compare_csv(std::span<const ModeReport> modes);
std::string error_over_time_csv(std::span<const ModeReport> modes);
std::string sar_window_boxes_csv(std::span<const ModeReport> modes);
std::string utility_boxes_csv(std::span<const ModeReport> modes);
std::string utility_by_type_csv(std::span<const ModeReport> modes);
/// Human-readable per-mode table plus the observed utility ordering.
std::string report_text(const RunMeta& meta, std::span<const ModeReport> modes);

/// Writes a set of files all or nothing: contents go to temporary files in the
/// target directory, then each is renamed into place. On failure every
/// temporary and every file already moved is removed. Throws std::runtime_error.
void write_files(const std::filesystem::path& dir, std::span<const std::pair<std::string, std::string>> files);

}  // namespace qram::io
