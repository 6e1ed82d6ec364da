#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <string_view>
#include <vector>

#include "qram/io/output.hpp"
#include "qram/sim/scenario.hpp"

namespace qram::io {

struct CommandOptions {
  std::filesystem::path config;
  std::optional<models::ConcurrencyMode> mode;  ///< run: defaults to standard
  std::vector<std::uint64_t> seeds{1};
  std::filesystem::path out = "out";
  std::optional<std::size_t> mcts_iterations;
  std::optional<double> epoch_s;
};

/// "n" is seeds 1..n; "a,b,c" is an explicit list. Throws std::invalid_argument.
std::vector<std::uint64_t> parse_seeds(std::string_view text);

/// Loads the scenario, applies the overrides and re-checks it. Diagnostics go
/// to err; returns nullopt on any error.
std::optional<sim::ScenarioConfig> load_with_overrides(const CommandOptions& options, std::ostream& err);

/// All four modes on the same seeds, in declaration order of ConcurrencyMode.
std::vector<ModeReport> compare_modes(const sim::ScenarioConfig& config, std::span<const std::uint64_t> seeds);

/// Writes series.csv and summary.json. Exit status 0 on success, 1 otherwise.
int cmd_run(const CommandOptions& options, std::ostream& out, std::ostream& err);
/// Writes compare.csv, summary.json, series.csv, report.txt and the plot CSVs
/// (error_over_time.csv, sar_window_boxes.csv, utility_boxes.csv, utility_by_type.csv).
int cmd_compare(const CommandOptions& options, std::ostream& out, std::ostream& err);
/// Prints every issue and a count line; exit 0 iff there are no errors.
int cmd_validate(const std::filesystem::path& config, std::ostream& out, std::ostream& err);

}  // namespace qram::io
