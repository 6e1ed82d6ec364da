#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "qram/core/resource.hpp"
#include "qram/core/task_config.hpp"
#include "qram/models/environment.hpp"
#include "qram/models/tracking.hpp"

namespace qram::models {

/// The RF modes of the scenario platform.
enum class TaskType {
  AirSurveillance,
  AirTrack,
  AirHrrp,
  StripmapSar,
  GmtiWideArea,
  RadarWarning,
  EsmSurveillance,
  ElectronicAttack,
  DataLink,
  SarImageLink,
};

inline constexpr std::size_t kTaskTypeCount = 10;

/// What a task radiates; drives EMCON filtering and multioperation pairing.
enum class EmissionClass { Radar, ElectronicAttack, Communication, Passive };

std::string_view to_string(TaskType type);
std::optional<TaskType> parse_task_type(std::string_view name);
const std::array<TaskType, kTaskTypeCount>& all_task_types();
EmissionClass emission_class(TaskType type);
bool transmits(TaskType type);

/// Frequency occupancy of a task.
struct Band {
  double center_hz = 10e9;
  double width_hz = 1e9;
};

/// Mission- and type-specific model constants. All are settable from the
/// configuration file; each model reads the subset it needs.
struct TaskParams {
  double weight = 1.0;            ///< mission weight of the non-weighted utility
  double quality_min = 0.0;       ///< quality below which utility is 0 (model units)
  double quality_req = 1.0;       ///< quality at which utility reaches 1
  double shape = 3.0;             ///< ramp curvature
  Band band;
  bool stretchable = false;       ///< long dwell that may yield time to interleaved partners

  UtilityParams track;            ///< track update task only

  double instrumented_range_m = 60e3;  ///< surveillance / GMTI listening window
  double sector_sr = 0.5;              ///< GMTI search sector
  double revisit_req_s = 2.0;          ///< surveillance
  double revisit_max_s = 8.0;          ///< surveillance
  double snr_margin_db = 6.0;          ///< SAR / GMTI / HRRP SNR ramp width above threshold

  double reference_range_m = 50e3;     ///< EW / comm budgets are quoted at this range
  double reference_level_db = 20.0;    ///< sensitivity margin, J/S or link SNR at full aperture and reference range
  double reference_bandwidth_hz = 10e6;
  double intercept_rate_hz = 5.0;      ///< RWR / ESM
  double dwell_req = 0.2;              ///< EA
};

/// Resources, quality and utility of one configuration.
struct ModelEvaluation {
  ResourceVector resources;
  QualityRecord quality;
  double nonweighted_utility = 0.0;
  double utility = 0.0;
};

/// Quality/utility/resource functions of one task type.
class PerformanceModel {
 public:
  virtual ~PerformanceModel() = default;
  [[nodiscard]] virtual TaskType type() const = 0;
  [[nodiscard]] virtual ModelEvaluation evaluate(const TaskConfiguration& config, const Environment& env,
                                                 const TaskParams& params, double quality_factor) const = 0;
  /// Hard feasibility: element counts, duty cycle, dwell within the epoch.
  [[nodiscard]] virtual bool feasible(const TaskConfiguration& config, const Environment& env) const;
};

/// Registered model of a task type.
const PerformanceModel& model_for(TaskType type);

/// Evaluates any registered task type. quality_factor scales the primary
/// quality (multifunction waveform sharing). Throws ConfigError for an
/// unregistered type name.
ModelEvaluation generic_task_model(std::string_view type_name, const TaskConfiguration& config,
                                   const Environment& env, const TaskParams& params, double quality_factor = 1.0);
ModelEvaluation generic_task_model(TaskType type, const TaskConfiguration& config, const Environment& env,
                                   const TaskParams& params, double quality_factor = 1.0);

}  // namespace qram::models
