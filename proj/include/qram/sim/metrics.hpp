#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qram/sim/safety.hpp"
#include "qram/sim/simulator.hpp"

namespace qram::sim {

/// Box-plot statistics. Quartiles interpolate linearly between order
/// statistics; std is the sample deviation (0 for one value); whiskers are the
/// extreme data within 1.5 IQR of the quartiles.
struct Summary {
  std::size_t n = 0;
  double mean = 0.0;
  double std = 0.0;
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
  double whisker_low = 0.0;
  double whisker_high = 0.0;
};

/// Quantile p in [0, 1] of the values (linear interpolation of the sorted data).
double quantile(std::vector<double> values, double p);
/// Throws std::invalid_argument for an empty input.
Summary summarize(std::span<const double> values);

/// Raw per-epoch series of one run plus its scenario totals.
struct MetricsSeries {
  std::string run_id;
  std::vector<double> times;
  std::vector<double> mean_track_error;  ///< per epoch
  std::vector<double> total_utility;     ///< per epoch
  std::vector<std::vector<double>> type_utility;  ///< [task type][epoch]
  std::vector<double> sar_active;        ///< 1 while a SAR request is pending
  std::vector<double> timeline_end_s;    ///< end of the last scheduled entry
  std::vector<double> drop_count;

  double scenario_track_error = 0.0;   ///< mean of mean_track_error
  double sar_window_track_error = 0.0; ///< mean over epochs with a pending SAR request (0 if none)
  std::size_t sar_window_epochs = 0;
  double cumulative_utility = 0.0;     ///< sum of total_utility
  std::size_t drops = 0;
};

MetricsSeries collect_metrics(const RunResult& run, const std::string& run_id);

/// Per-epoch aggregate across runs (all runs must share the time grid).
struct TimeBin {
  double t = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double std = 0.0;
};

/// Per-epoch median, third quartile and std of equally long series.
std::vector<TimeBin> aggregate_bins(std::span<const double> times, std::span<const std::vector<double>> series);

struct ModeSummary {
  std::string mode;
  std::size_t runs = 0;
  Summary scenario_track_error;
  Summary sar_window_track_error;
  Summary cumulative_utility;
  std::size_t drops = 0;
  std::vector<TimeBin> track_error_over_time;
  std::vector<TimeBin> utility_over_time;
  std::vector<std::vector<TimeBin>> type_utility_over_time;  ///< [task type]
};

/// Cross-run statistics of one mode. Throws std::invalid_argument for no runs.
ModeSummary aggregate_runs(const std::string& mode, std::span<const MetricsSeries> runs);

/// Runs of one mode reduced to their metrics and safety scan.
struct ModeBatch {
  ConcurrencyMode mode = ConcurrencyMode::Standard;
  std::vector<MetricsSeries> runs;
  SafetyReport safety;
};

ModeBatch run_batch(const ScenarioConfig& config, ConcurrencyMode mode, std::span<const std::uint64_t> seeds);

}  // namespace qram::sim
