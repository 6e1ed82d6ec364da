#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qram/sim/scenario.hpp"

namespace qram::io {

inline constexpr int kConfigSchemaVersion = 1;

enum class Severity { Error, Warning };

/// One diagnostic. line and column are 1-based; 0 when unknown.
struct Issue {
  Severity severity = Severity::Error;
  std::string source;
  int line = 0;
  int column = 0;
  std::string message;

  /// "source:line:col: error: message"
  [[nodiscard]] std::string format() const;
};

struct Location {
  int line = 0;
  int column = 0;
};

/// Where each section of a parsed file came from, keyed by path
/// ("templates[2]", "requests[0].t_start", "emcon[1].level", ...).
struct SourceMap {
  std::string source;
  std::map<std::string, Location> locations;

  [[nodiscard]] Location find(const std::string& path) const;
};

struct LoadResult {
  std::optional<sim::ScenarioConfig> config;  ///< empty when parsing failed outright
  std::vector<Issue> issues;
  SourceMap map;

  [[nodiscard]] std::size_t errors() const;
  [[nodiscard]] std::size_t warnings() const;
  [[nodiscard]] bool ok() const { return config.has_value() && errors() == 0; }
};

/// Parses a scenario document and runs check_scenario on the result.
LoadResult parse_scenario(const std::string& text, const std::string& source = "<memory>");
/// Reads and parses a file. A missing file yields one error naming the path.
LoadResult load_scenario(const std::filesystem::path& path);

/// Semantic checks of a parsed scenario: value ranges, storyboard references,
/// time ordering, and grid feasibility (warning when a task template has no
/// feasible configuration besides off).
std::vector<Issue> check_scenario(const sim::ScenarioConfig& config, const SourceMap& map);

/// Load, throwing ConfigError with every formatted error when not ok().
sim::ScenarioConfig load_scenario_or_throw(const std::filesystem::path& path);

}  // namespace qram::io
