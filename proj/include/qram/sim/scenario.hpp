#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "qram/concurrency/rules.hpp"
#include "qram/core/resource.hpp"
#include "qram/models/combined.hpp"
#include "qram/models/enumerate.hpp"
#include "qram/sim/trajectory.hpp"

namespace qram::sim {

using models::ConcurrencyMode;
using models::EmconLevel;

/// Platform, target, emitter or fixed ground point.
struct EntityConfig {
  std::string id;
  Vec3 start = Vec3::Zero();
  std::vector<Leg> legs;
  double rcs_m2 = 5.0;
  double process_noise = 0.0;  ///< truth deviation intensity and tracker q, m^2/s^3
  double priority = 1.0;       ///< K_t of tracking tasks on this entity
  bool randomize_start = true;
};

struct TaskTemplate {
  std::string id;
  models::TaskSpec spec;
};

/// One line of the storyboard: a task request, optionally recurring.
struct RequestConfig {
  std::string id;
  std::string template_id;
  double t_start = 0.0;  ///< relative to the completion of `after` when set
  double t_end = std::numeric_limits<double>::infinity();
  std::string after;
  std::string target;    ///< entity the task points at; empty uses the fixed geometry below
  double range_m = 50e3;
  double azimuth_rad = 0.0;
  double elevation_rad = 0.0;
  double loss_db = 0.0;
  double period_s = 0.0;  ///< 0: continuous while active
  double on_s = 0.0;
  double work_s = 0.0;    ///< executed dwell seconds after which the request completes; 0: never
  bool jitter = true;
};

struct EmconEvent {
  double t = 0.0;
  EmconLevel level = EmconLevel::None;
};

struct Randomization {
  double time_jitter_s = 5.0;    ///< uniform +-, request times
  double start_offset_m = 2000;  ///< uniform +-, per horizontal axis of entity starts
};

struct PlanningConfig {
  std::size_t mcts_iterations = 200;
  double exploration_c = 1.4142135623730951;
  bool warm_start = true;
  concurrency::CombinationRule rule;  ///< mode is set per run
  models::CombinationPenalties penalties;
  std::size_t thinning = 8;
  CompoundWeights weights = kDefaultCompoundWeights;
  ResourceVector bounds{1.0, 1.0};
};

struct TrackerConfig {
  double init_position_sigma_m = 100.0;
  double init_velocity_sigma_mps = 20.0;
};

struct ScenarioConfig {
  std::string name = "scenario";
  double duration_s = 550.0;
  models::SystemParams system;
  models::MissionParams mission;
  EntityConfig platform;
  std::vector<EntityConfig> entities;
  std::vector<TaskTemplate> templates;
  std::vector<RequestConfig> requests;
  std::vector<EmconEvent> emcon;
  Randomization randomization;
  PlanningConfig planning;
  TrackerConfig tracker;

  [[nodiscard]] double epoch_s() const { return system.epoch_s; }
  [[nodiscard]] std::size_t epoch_count() const;
  [[nodiscard]] const TaskTemplate* find_template(const std::string& id) const;
  [[nodiscard]] const EntityConfig* find_entity(const std::string& id) const;
};

}  // namespace qram::sim
