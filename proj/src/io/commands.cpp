#include "qram/io/commands.hpp"

#include <algorithm>
#include <charconv>
#include <exception>
#include <stdexcept>
#include <string>
#include <utility>

#include "qram/io/config_loader.hpp"

namespace qram::io {

namespace {

constexpr models::ConcurrencyMode kModes[] = {models::ConcurrencyMode::Standard, models::ConcurrencyMode::Interleaved,
                                              models::ConcurrencyMode::Multifunction,
                                              models::ConcurrencyMode::Multioperation};

std::uint64_t parse_u64(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  std::uint64_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw std::invalid_argument("invalid seed '" + std::string(s) + "'");
  }
  return v;
}

RunMeta meta_for(const std::string& command, const sim::ScenarioConfig& config, std::span<const std::uint64_t> seeds) {
  return {command, config.name, {seeds.begin(), seeds.end()}, config.epoch_s(), config.planning.mcts_iterations};
}

std::vector<sim::ModeBatch> run_modes(const sim::ScenarioConfig& config, std::span<const std::uint64_t> seeds) {
  std::vector<sim::ModeBatch> batches;
  for (auto mode : kModes) batches.push_back(sim::run_batch(config, mode, seeds));
  return batches;
}

}  // namespace

std::vector<std::uint64_t> parse_seeds(std::string_view text) {
  std::vector<std::uint64_t> seeds;
  if (text.find(',') == std::string_view::npos) {
    const std::uint64_t n = parse_u64(text);
    if (n == 0) throw std::invalid_argument("seed count must be at least 1");
    for (std::uint64_t s = 1; s <= n; ++s) seeds.push_back(s);
    return seeds;
  }
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t next = std::min(text.find(',', pos), text.size());
    seeds.push_back(parse_u64(text.substr(pos, next - pos)));
    pos = next + 1;
  }
  return seeds;
}

std::optional<sim::ScenarioConfig> load_with_overrides(const CommandOptions& options, std::ostream& err) {
  LoadResult loaded = load_scenario(options.config);
  for (const auto& issue : loaded.issues) err << issue.format() << '\n';
  if (!loaded.ok()) return std::nullopt;
  sim::ScenarioConfig config = std::move(*loaded.config);
  if (!options.mcts_iterations && !options.epoch_s) return config;
  if (options.mcts_iterations) config.planning.mcts_iterations = *options.mcts_iterations;
  if (options.epoch_s) config.system.epoch_s = *options.epoch_s;
  bool failed = false;
  for (const auto& issue : check_scenario(config, loaded.map)) {
    if (issue.severity != Severity::Error) continue;  // warnings were printed above
    err << issue.format() << " (after command-line overrides)\n";
    failed = true;
  }
  if (failed) return std::nullopt;
  return config;
}

std::vector<ModeReport> compare_modes(const sim::ScenarioConfig& config, std::span<const std::uint64_t> seeds) {
  std::vector<ModeReport> reports;
  for (const auto& batch : run_modes(config, seeds)) reports.push_back(make_report(batch));
  return reports;
}

int cmd_run(const CommandOptions& options, std::ostream& out, std::ostream& err) {
  try {
    if (options.seeds.empty()) throw std::invalid_argument("at least one seed is required");
    const auto config = load_with_overrides(options, err);
    if (!config) return 1;
    const auto mode = options.mode.value_or(models::ConcurrencyMode::Standard);
    const sim::ModeBatch batch = sim::run_batch(*config, mode, options.seeds);
    const std::vector<ModeReport> reports{make_report(batch)};
    const RunMeta meta = meta_for("run", *config, options.seeds);
    const std::pair<std::string, std::string> files[] = {{"series.csv", series_csv(batch.runs)},
                                                         {"summary.json", summary_json(meta, reports)}};
    write_files(options.out, files);
    out << report_text(meta, reports);
    out << "wrote " << (options.out / "series.csv").string() << " and " << (options.out / "summary.json").string()
        << '\n';
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

int cmd_compare(const CommandOptions& options, std::ostream& out, std::ostream& err) {
  try {
    if (options.seeds.empty()) throw std::invalid_argument("at least one seed is required");
    const auto config = load_with_overrides(options, err);
    if (!config) return 1;
    const auto batches = run_modes(*config, options.seeds);
    std::vector<ModeReport> reports;
    std::vector<sim::MetricsSeries> all_runs;
    for (const auto& b : batches) {
      reports.push_back(make_report(b));
      all_runs.insert(all_runs.end(), b.runs.begin(), b.runs.end());
    }
    const RunMeta meta = meta_for("compare", *config, options.seeds);
    const std::string report = report_text(meta, reports);
    const std::pair<std::string, std::string> files[] = {
        {"compare.csv", compare_csv(reports)},
        {"summary.json", summary_json(meta, reports)},
        {"series.csv", series_csv(all_runs)},
        {"report.txt", report},
        {"error_over_time.csv", error_over_time_csv(reports)},
        {"sar_window_boxes.csv", sar_window_boxes_csv(reports)},
        {"utility_boxes.csv", utility_boxes_csv(reports)},
        {"utility_by_type.csv", utility_by_type_csv(reports)},
    };
    write_files(options.out, files);
    out << report;
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

int cmd_validate(const std::filesystem::path& config, std::ostream& out, std::ostream& err) {
  const LoadResult loaded = load_scenario(config);
  for (const auto& issue : loaded.issues) err << issue.format() << '\n';
  const std::size_t n = loaded.issues.size();
  out << n << (n == 1 ? " issue" : " issues");
  if (n > 0) out << " (" << loaded.errors() << " errors, " << loaded.warnings() << " warnings)";
  out << '\n';
  return loaded.ok() ? 0 : 1;
}

}  // namespace qram::io
