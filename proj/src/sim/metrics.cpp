#include "qram/sim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qram::sim {

double quantile(std::vector<double> values, double p) {
  if (values.empty()) throw std::invalid_argument("quantile of an empty sample");
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("quantile level outside [0, 1]");
  std::sort(values.begin(), values.end());
  const double h = p * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

Summary summarize(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("summary of an empty sample");
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  Summary s;
  s.n = v.size();
  s.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(s.n);
  if (s.n > 1) {
    double ss = 0.0;
    for (double x : v) ss += (x - s.mean) * (x - s.mean);
    s.std = std::sqrt(ss / static_cast<double>(s.n - 1));
  }
  s.min = v.front();
  s.max = v.back();
  s.q1 = quantile(v, 0.25);
  s.median = quantile(v, 0.5);
  s.q3 = quantile(v, 0.75);
  const double iqr = s.q3 - s.q1;
  s.whisker_low = *std::lower_bound(v.begin(), v.end(), s.q1 - 1.5 * iqr);
  s.whisker_high = *std::prev(std::upper_bound(v.begin(), v.end(), s.q3 + 1.5 * iqr));
  return s;
}

MetricsSeries collect_metrics(const RunResult& run, const std::string& run_id) {
  MetricsSeries m;
  m.run_id = run_id;
  const auto& types = models::all_task_types();
  m.type_utility.assign(types.size(), std::vector<double>(run.epochs.size(), 0.0));
  double cumulative = 0.0;
  double sar_sum = 0.0;
  for (std::size_t k = 0; k < run.epochs.size(); ++k) {
    const auto& e = run.epochs[k];
    const double err = e.mean_track_error();
    const double total = e.total_utility();
    cumulative += total;
    m.times.push_back(e.t);
    m.mean_track_error.push_back(err);
    m.total_utility.push_back(total);
    for (const auto& r : e.realized) m.type_utility[static_cast<std::size_t>(r.type)][k] += r.utility;
    if (e.sar_active) {
      sar_sum += err;
      ++m.sar_window_epochs;
    }
    m.drops += e.timeline.drops.size();

    double scheduled = 0.0;
    for (const auto& entry : e.timeline.entries) scheduled = std::max(scheduled, entry.end_s());
    m.sar_active.push_back(e.sar_active ? 1.0 : 0.0);
    m.timeline_end_s.push_back(scheduled);
    m.drop_count.push_back(static_cast<double>(e.timeline.drops.size()));
  }
  if (!m.mean_track_error.empty()) {
    m.scenario_track_error = std::accumulate(m.mean_track_error.begin(), m.mean_track_error.end(), 0.0) /
                             static_cast<double>(m.mean_track_error.size());
  }
  if (m.sar_window_epochs > 0) m.sar_window_track_error = sar_sum / static_cast<double>(m.sar_window_epochs);
  m.cumulative_utility = cumulative;
  return m;
}

std::vector<TimeBin> aggregate_bins(std::span<const double> times, std::span<const std::vector<double>> series) {
  std::vector<TimeBin> bins;
  for (const auto& s : series) {
    if (s.size() != times.size()) throw std::invalid_argument("runs do not share the time grid");
  }
  for (std::size_t k = 0; k < times.size(); ++k) {
    std::vector<double> column;
    for (const auto& s : series) column.push_back(s[k]);
    const Summary st = summarize(column);
    bins.push_back({times[k], st.median, st.q3, st.std});
  }
  return bins;
}

ModeSummary aggregate_runs(const std::string& mode, std::span<const MetricsSeries> runs) {
  if (runs.empty()) throw std::invalid_argument("no runs to aggregate");
  ModeSummary out;
  out.mode = mode;
  out.runs = runs.size();
  std::vector<double> err, sar, util;
  std::vector<std::vector<double>> err_series, util_series;
  for (const auto& r : runs) {
    err.push_back(r.scenario_track_error);
    sar.push_back(r.sar_window_track_error);
    util.push_back(r.cumulative_utility);
    out.drops += r.drops;
    err_series.push_back(r.mean_track_error);
    util_series.push_back(r.total_utility);
  }
  out.scenario_track_error = summarize(err);
  out.sar_window_track_error = summarize(sar);
  out.cumulative_utility = summarize(util);
  const auto& times = runs.front().times;
  out.track_error_over_time = aggregate_bins(times, err_series);
  out.utility_over_time = aggregate_bins(times, util_series);
  for (std::size_t i = 0; i < models::kTaskTypeCount; ++i) {
    std::vector<std::vector<double>> per_type;
    for (const auto& r : runs) per_type.push_back(r.type_utility[i]);
    out.type_utility_over_time.push_back(aggregate_bins(times, per_type));
  }
  return out;
}

ModeBatch run_batch(const ScenarioConfig& config, ConcurrencyMode mode, std::span<const std::uint64_t> seeds) {
  ModeBatch batch;
  batch.mode = mode;
  for (std::uint64_t seed : seeds) {
    const RunResult run = run_scenario(config, mode, seed);
    batch.safety.merge(scan_run(run, config.epoch_s(), config.system.duty_limit));
    batch.runs.push_back(collect_metrics(run, std::string(models::to_string(mode)) + "-" + std::to_string(seed)));
  }
  return batch;
}

}  // namespace qram::sim
