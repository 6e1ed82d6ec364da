#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qram/concurrency/leaf_eval.hpp"
#include "qram/sim/kalman.hpp"
#include "qram/sim/scenario.hpp"
#include "qram/sim/scheduler.hpp"

namespace qram::sim {

struct TaskUtility {
  std::string task_id;
  models::TaskType type = models::TaskType::AirTrack;
  double utility = 0.0;
};

struct TargetError {
  std::string entity_id;
  double error_m = 0.0;      ///< realized a-priori error, capped
  double predicted_rms_m = 0.0;  ///< filter's own sqrt(trace P)
  bool measured = false;     ///< received a measurement this epoch
};

struct EpochResult {
  double t = 0.0;
  EmconLevel emcon = EmconLevel::None;
  std::vector<std::string> active_tasks;
  std::vector<std::vector<std::string>> blocks;  ///< selected leaf, by task id
  double predicted_utility = 0.0;
  Timeline timeline;
  std::vector<TaskUtility> realized;
  std::vector<TargetError> errors;
  bool sar_active = false;    ///< a stripmap request is pending
  double stretch_s = 0.0;     ///< dwell yielded by stretched members
  std::size_t leaf_evaluations = 0;

  [[nodiscard]] double mean_track_error() const;
  [[nodiscard]] double total_utility() const;
};

/// A request as randomized for one run.
struct RequestState {
  const RequestConfig* config = nullptr;
  const TaskTemplate* task = nullptr;
  double start = 0.0;  ///< absolute; unknown until `after` completes
  double end = 0.0;
  bool started = false;
  bool completed = false;
  double completed_at = 0.0;
  double work_done_s = 0.0;
};

struct EntityState {
  const EntityConfig* config = nullptr;
  TruthState truth;
  std::optional<NcvKalman> track;
};

struct ScenarioState {
  double t = 0.0;
  std::size_t epoch = 0;
  EmconLevel emcon = EmconLevel::None;
  EntityState platform;
  std::vector<EntityState> entities;
  std::vector<RequestState> requests;
  std::vector<std::vector<std::string>> previous_leaf;
};

/// Epoch-stepped scenario for one concurrency mode and seed. Truth motion and
/// request jitter come from their own seeded streams, so every mode sees the
/// same world for a given seed.
class Simulator {
 public:
  Simulator(const ScenarioConfig& config, ConcurrencyMode mode, std::uint64_t seed);

  [[nodiscard]] bool done() const;
  EpochResult step();
  [[nodiscard]] const ScenarioState& state() const { return state_; }
  [[nodiscard]] ConcurrencyMode mode() const { return mode_; }

 private:
  void update_requests();
  std::vector<models::TaskInstance> active_tasks(std::vector<std::size_t>& request_of) const;
  models::Environment environment_for(const RequestState& r) const;
  concurrency::LeafResult plan(std::span<const models::TaskInstance> tasks, EpochResult& out);
  void execute(std::span<const models::TaskInstance> tasks, std::span<const std::size_t> request_of,
               const concurrency::LeafResult& plan, EpochResult& out);
  EntityState* entity(const std::string& id);
  const EntityState* entity(const std::string& id) const;

  const ScenarioConfig& config_;
  ConcurrencyMode mode_;
  std::uint64_t seed_;
  ScenarioState state_;
  std::mt19937_64 truth_rng_;
  std::mt19937_64 measurement_rng_;
};

struct RunResult {
  ConcurrencyMode mode = ConcurrencyMode::Standard;
  std::uint64_t seed = 0;
  std::vector<EpochResult> epochs;
};

/// All epochs to the end of the scenario.
RunResult run_scenario(const ScenarioConfig& config, ConcurrencyMode mode, std::uint64_t seed);

}  // namespace qram::sim
