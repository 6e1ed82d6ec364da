#pragma once

#include <string>
#include <vector>

#include "qram/core/task_config.hpp"
#include "qram/models/environment.hpp"
#include "qram/models/task_models.hpp"

namespace qram::models {

/// Finite value lists spanning a task's operational space. Every list must be
/// nonempty; dimensions a task type ignores hold a single placeholder value.
struct ParameterGrid {
  std::vector<int> n_az{1};
  std::vector<int> n_el{1};
  std::vector<double> prf_hz{1000.0};
  std::vector<int> n_pulses{1};
  std::vector<double> pulse_width_s{1e-6};
  std::vector<double> bandwidth_hz{1e6};
  std::vector<double> wavelength_m{0.03};
  std::vector<double> dwell_fraction{0.1};

  [[nodiscard]] std::size_t cardinality() const;
  /// Grid points in lexicographic order of the parameter lists.
  [[nodiscard]] std::vector<TaskConfiguration> points() const;
};

/// Task definition: type name, model constants, and operational grid.
struct TaskSpec {
  std::string type;
  TaskParams params;
  ParameterGrid grid;
};

/// Off-configuration (index 0) followed by every feasible grid point, each
/// evaluated through the task type's performance model. Throws ConfigError
/// for an unknown type and std::invalid_argument for an empty grid list.
std::vector<EvaluatedConfig> enumerate_configs(const TaskSpec& spec, const Environment& env);

/// One requested task at planning time: its definition plus its environment.
struct TaskInstance {
  std::string id;
  TaskType type = TaskType::AirTrack;
  TaskSpec spec;
  Environment env;
};

/// Convenience: evaluate one configuration of a task instance.
ModelEvaluation evaluate(const TaskInstance& task, const TaskConfiguration& config, double quality_factor = 1.0);

}  // namespace qram::models
