#include "qram/sim/simulator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <Eigen/Cholesky>

#include "qram/concurrency/mcts.hpp"
#include "qram/models/radar.hpp"

namespace qram::sim {

namespace {

enum Stream : std::uint32_t { kWorld = 1, kTruth = 2, kMeasurement = 3, kPlanning = 4 };

std::uint64_t derive(std::uint64_t seed, std::uint32_t stream, std::uint64_t index = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), stream,
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::array<std::uint32_t, 2> out{};
  seq.generate(out.begin(), out.end());
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

bool emcon_allows(models::TaskType type, EmconLevel level) {
  if (level != EmconLevel::Bravo) return true;
  const auto c = models::emission_class(type);
  return c == models::EmissionClass::Communication || c == models::EmissionClass::Passive;
}

models::TaskType type_of(const TaskTemplate& t) {
  const auto type = models::parse_task_type(t.spec.type);
  if (!type) throw std::invalid_argument("unknown task type '" + t.spec.type + "'");
  return *type;
}

}  // namespace

std::size_t ScenarioConfig::epoch_count() const {
  if (system.epoch_s <= 0.0) throw std::invalid_argument("epoch must be positive");
  return static_cast<std::size_t>(std::ceil(duration_s / system.epoch_s - 1e-9));
}

const TaskTemplate* ScenarioConfig::find_template(const std::string& id) const {
  for (const auto& t : templates) {
    if (t.id == id) return &t;
  }
  return nullptr;
}

const EntityConfig* ScenarioConfig::find_entity(const std::string& id) const {
  for (const auto& e : entities) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

double EpochResult::mean_track_error() const {
  if (errors.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& e : errors) sum += e.error_m;
  return sum / static_cast<double>(errors.size());
}

double EpochResult::total_utility() const {
  double sum = 0.0;
  for (const auto& r : realized) sum += r.utility;
  return sum;
}

Simulator::Simulator(const ScenarioConfig& config, ConcurrencyMode mode, std::uint64_t seed)
    : config_(config),
      mode_(mode),
      seed_(seed),
      truth_rng_(derive(seed, kTruth)),
      measurement_rng_(derive(seed, kMeasurement)) {
  if (config.duration_s <= 0.0) throw std::invalid_argument("scenario duration must be positive");
  if (config.epoch_count() == 0) throw std::invalid_argument("scenario shorter than one epoch");
  std::mt19937_64 world(derive(seed, kWorld));
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::normal_distribution<double> normal;

  auto make_truth = [&](const EntityConfig& e) {
    const double dx = unit(world) * config.randomization.start_offset_m;
    const double dy = unit(world) * config.randomization.start_offset_m;
    Vec3 start = e.start;
    if (e.randomize_start) start += Vec3(dx, dy, 0.0);
    return TruthState(Trajectory(start, e.legs), e.process_noise);
  };

  state_.platform.config = &config.platform;
  state_.platform.truth = make_truth(config.platform);

  std::vector<bool> tracked(config.entities.size(), false);
  for (const auto& r : config.requests) {
    const auto* tmpl = config.find_template(r.template_id);
    if (tmpl == nullptr) throw std::invalid_argument("request '" + r.id + "' uses unknown template");
    if (!r.target.empty() && config.find_entity(r.target) == nullptr) {
      throw std::invalid_argument("request '" + r.id + "' points at unknown entity '" + r.target + "'");
    }
    if (type_of(*tmpl) != models::TaskType::AirTrack) continue;
    for (std::size_t i = 0; i < config.entities.size(); ++i) {
      if (config.entities[i].id == r.target) tracked[i] = true;
    }
  }

  for (std::size_t i = 0; i < config.entities.size(); ++i) {
    EntityState s;
    s.config = &config.entities[i];
    s.truth = make_truth(config.entities[i]);
    // initial cue: truth plus Gaussian error, drawn for every entity to keep the stream aligned
    Vec6 x;
    x.head<3>() = s.truth.position();
    x.tail<3>() = s.truth.velocity();
    for (int k = 0; k < 3; ++k) x[k] += normal(world) * config.tracker.init_position_sigma_m;
    for (int k = 3; k < 6; ++k) x[k] += normal(world) * config.tracker.init_velocity_sigma_mps;
    if (tracked[i]) {
      Mat6 p = Mat6::Zero();
      p.topLeftCorner<3, 3>() = Mat3::Identity() * std::pow(config.tracker.init_position_sigma_m, 2);
      p.bottomRightCorner<3, 3>() = Mat3::Identity() * std::pow(config.tracker.init_velocity_sigma_mps, 2);
      s.track = NcvKalman(x, p, config.entities[i].process_noise);
    }
    state_.entities.push_back(std::move(s));
  }

  for (const auto& r : config.requests) {
    RequestState s;
    s.config = &r;
    s.task = config.find_template(r.template_id);
    const double jitter = unit(world) * config.randomization.time_jitter_s;
    const double offset = r.jitter ? jitter : 0.0;
    s.start = r.t_start + offset;
    s.end = r.t_end + offset;
    s.started = r.after.empty();
    if (s.started) s.start = std::max(0.0, s.start);
    state_.requests.push_back(s);
  }
  for (auto& s : state_.requests) {
    if (s.config->after.empty()) continue;
    const bool known = std::any_of(config.requests.begin(), config.requests.end(),
                                   [&](const RequestConfig& r) { return r.id == s.config->after; });
    if (!known) throw std::invalid_argument("request '" + s.config->id + "' waits for unknown request");
  }
}

bool Simulator::done() const { return state_.epoch >= config_.epoch_count(); }

EntityState* Simulator::entity(const std::string& id) {
  for (auto& e : state_.entities) {
    if (e.config->id == id) return &e;
  }
  return nullptr;
}

const EntityState* Simulator::entity(const std::string& id) const {
  for (const auto& e : state_.entities) {
    if (e.config->id == id) return &e;
  }
  return nullptr;
}

void Simulator::update_requests() {
  for (auto& r : state_.requests) {
    if (r.started) continue;
    for (const auto& dep : state_.requests) {
      if (dep.config->id != r.config->after || !dep.completed) continue;
      // the stored start/end hold the relative times plus jitter
      r.start = dep.completed_at + r.start;
      r.end = dep.completed_at + r.end;
      r.started = true;
    }
  }
}

namespace {

bool lifetime_active(const RequestState& r, double t) {
  if (!r.started || r.completed || t < r.start || t >= r.end) return false;
  if (r.config->period_s <= 0.0) return true;
  return std::fmod(t - r.start, r.config->period_s) < r.config->on_s;
}

}  // namespace

models::Environment Simulator::environment_for(const RequestState& r) const {
  models::Environment env;
  env.system = config_.system;
  env.mission = config_.mission;
  env.mission.emcon = state_.emcon;
  env.task.range_m = r.config->range_m;
  env.task.azimuth_rad = r.config->azimuth_rad;
  env.task.elevation_rad = r.config->elevation_rad;
  env.task.loss_db = r.config->loss_db;
  if (r.config->target.empty()) return env;

  const EntityState* e = entity(r.config->target);
  const auto g = relative_geometry(state_.platform.truth.position(), state_.platform.truth.velocity(),
                                   e->truth.position(), e->truth.velocity());
  env.task.range_m = std::max(g.range_m, 1.0);
  env.task.radial_velocity_mps = g.radial_velocity_mps;
  env.task.azimuth_rad = g.azimuth_rad;
  env.task.elevation_rad = g.elevation_rad;
  env.task.rcs_m2 = e->config->rcs_m2;
  env.task.process_noise = e->config->process_noise;
  env.task.priority = e->config->priority;
  if (e->track && type_of(*r.task) == models::TaskType::AirTrack) {
    env.task.coast_error_m = e->track->predicted_position_rms(config_.epoch_s());
  }
  return env;
}

std::vector<models::TaskInstance> Simulator::active_tasks(std::vector<std::size_t>& request_of) const {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < state_.requests.size(); ++i) {
    const auto& r = state_.requests[i];
    if (lifetime_active(r, state_.t) && emcon_allows(type_of(*r.task), state_.emcon)) idx.push_back(i);
  }
  // long stretchable dwells first: the combination tree branches on them at the root
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return state_.requests[a].task->spec.params.stretchable > state_.requests[b].task->spec.params.stretchable;
  });
  if (idx.size() > concurrency::kMaxTasks) throw std::runtime_error("more than 32 concurrent task requests");
  std::vector<models::TaskInstance> tasks;
  request_of.clear();
  for (std::size_t i : idx) {
    const auto& r = state_.requests[i];
    tasks.push_back({r.config->id, type_of(*r.task), r.task->spec, environment_for(r)});
    request_of.push_back(i);
  }
  return tasks;
}

concurrency::LeafResult Simulator::plan(std::span<const models::TaskInstance> tasks, EpochResult& out) {
  const auto& p = config_.planning;
  concurrency::LeafEvaluatorOptions options;
  options.mode = mode_;
  options.weights = p.weights;
  options.bounds = p.bounds;
  options.penalties = p.penalties;
  options.thinning = p.thinning;
  if (tasks.empty()) return {};

  concurrency::LeafEvaluator evaluator(tasks, options);
  concurrency::LeafResult result;
  auto rule = p.rule;
  rule.mode = mode_;
  if (mode_ == ConcurrencyMode::Standard || tasks.size() == 1) {
    concurrency::CombinationLeaf singletons;
    for (std::size_t i = 0; i < tasks.size(); ++i) singletons.blocks.push_back(concurrency::BlockMask{1} << i);
    result = evaluator.result(singletons);
  } else {
    concurrency::MctsOptions mcts;
    mcts.iterations = p.mcts_iterations;
    mcts.exploration_c = p.exploration_c;
    mcts.seed = derive(seed_, kPlanning, state_.epoch);
    if (p.warm_start) {
      // carry over the previous plan: surviving blocks keep their grouping
      concurrency::CombinationLeaf previous;
      concurrency::BlockMask covered = 0;
      for (const auto& ids : state_.previous_leaf) {
        concurrency::BlockMask b = 0;
        bool complete = true;
        for (const auto& id : ids) {
          const auto it = std::find_if(tasks.begin(), tasks.end(), [&](const auto& t) { return t.id == id; });
          if (it == tasks.end()) {
            complete = false;
            break;
          }
          b |= concurrency::BlockMask{1} << static_cast<std::size_t>(it - tasks.begin());
        }
        if (complete && b != 0) {
          previous.blocks.push_back(b);
          covered |= b;
        }
      }
      for (std::size_t i = 0; i < tasks.size(); ++i) {
        if ((covered & (concurrency::BlockMask{1} << i)) == 0) previous.blocks.push_back(concurrency::BlockMask{1} << i);
      }
      mcts.warm_start.push_back(std::move(previous));
    }
    auto planned = concurrency::mcts_search(tasks, rule, evaluator, mcts);
    result = std::move(planned.result);
  }
  out.leaf_evaluations = evaluator.evaluations();
  out.predicted_utility = result.utility;
  state_.previous_leaf.clear();
  for (concurrency::BlockMask b : result.leaf.blocks) {
    std::vector<std::string> ids;
    for (std::size_t m : concurrency::block_members(b)) ids.push_back(tasks[m].id);
    state_.previous_leaf.push_back(ids);
  }
  out.blocks = state_.previous_leaf;
  return result;
}

void Simulator::execute(std::span<const models::TaskInstance> tasks, std::span<const std::size_t> request_of,
                        const concurrency::LeafResult& plan, EpochResult& out) {
  const double epoch = config_.epoch_s();
  out.timeline = schedule_timeline(plan, tasks, mode_, epoch, config_.planning.weights,
                                   config_.planning.penalties.interleave_overhead_s);
  for (std::size_t b = 0; b < plan.chosen.size(); ++b) {
    const auto& chosen = plan.chosen[b];
    if (chosen.off || out.timeline.dropped(b)) continue;
    const bool shared = chosen.members.size() > 1;
    out.stretch_s += chosen.detail.stretch * epoch;
    for (std::size_t j = 0; j < chosen.members.size(); ++j) {
      const auto& task = tasks[chosen.members[j]];
      auto& request = state_.requests[request_of[chosen.members[j]]];
      const auto& config = chosen.detail.configs[j];
      const auto& eval = chosen.detail.members[j];

      if (request.config->work_s > 0.0) {
        request.work_done_s += eval.resources.time() * epoch;
        if (request.work_done_s >= request.config->work_s - 1e-9) {
          request.completed = true;
          request.completed_at = state_.t + epoch;
        }
      }

      if (task.type != models::TaskType::AirTrack) {
        out.realized.push_back({task.id, task.type, eval.utility});
        continue;
      }
      EntityState* target = entity(request.config->target);
      if (target == nullptr || !target->track) continue;
      models::Environment env = task.env;
      if (shared && mode_ == ConcurrencyMode::Multioperation) env.task.loss_db += config_.planning.penalties.isolation_penalty_db;
      const double snr = models::snr_db(config, env);
      if (snr < env.system.snr_floor_db) continue;
      auto sigmas = models::measurement_sigmas(config, env, snr);
      if (shared && mode_ == ConcurrencyMode::Multifunction) {
        const double f = config_.planning.penalties.multifunction_quality_factor;
        sigmas = {sigmas.range_m / f, sigmas.azimuth_m / f, sigmas.elevation_m / f};
      }
      const Vec3 truth = target->truth.position();
      const Mat3 r = measurement_covariance(state_.platform.truth.position(), truth, sigmas);
      const Mat3 l = Eigen::LLT<Mat3>(r).matrixL();
      std::normal_distribution<double> normal;
      Vec3 n;
      for (int k = 0; k < 3; ++k) n[k] = normal(measurement_rng_);
      target->track->update(truth + l * n, r);
      for (auto& e : out.errors) {
        if (e.entity_id == target->config->id) e.measured = true;
      }
    }
  }
}

EpochResult Simulator::step() {
  if (done()) throw std::logic_error("scenario already finished");
  EpochResult out;
  out.t = state_.t;
  for (const auto& e : config_.emcon) {
    if (e.t <= state_.t + 1e-9) state_.emcon = e.level;
  }
  out.emcon = state_.emcon;
  update_requests();

  const double cap = config_.system.track_error_cap_m;
  for (const auto& e : state_.entities) {
    if (!e.track) continue;
    const double err = (e.track->position() - e.truth.position()).norm();
    out.errors.push_back({e.config->id, std::min(err, cap), e.track->position_rms(), false});
  }

  for (const auto& r : state_.requests) {
    if (type_of(*r.task) == models::TaskType::StripmapSar && lifetime_active(r, state_.t)) out.sar_active = true;
  }

  std::vector<std::size_t> request_of;
  const auto tasks = active_tasks(request_of);
  for (const auto& t : tasks) out.active_tasks.push_back(t.id);
  const auto result = plan(tasks, out);
  execute(tasks, request_of, result, out);

  // the track picture is worth something while its request stands, even when the radar is silent
  for (const auto& r : state_.requests) {
    if (type_of(*r.task) != models::TaskType::AirTrack || !lifetime_active(r, state_.t)) continue;
    const auto it = std::find_if(out.errors.begin(), out.errors.end(),
                                 [&](const TargetError& e) { return e.entity_id == r.config->target; });
    if (it == out.errors.end()) continue;
    const auto env = environment_for(r);
    const auto& params = r.task->spec.params.track;
    const double u = models::tracking_utility(1.0 / std::max(it->error_m, 1e-6), env, params);
    out.realized.push_back({r.config->id, models::TaskType::AirTrack, u});
  }

  const double epoch = config_.epoch_s();
  state_.platform.truth.advance(epoch, truth_rng_);
  for (auto& e : state_.entities) {
    e.truth.advance(epoch, truth_rng_);
    if (e.track) e.track->predict(epoch);
  }
  state_.t += epoch;
  ++state_.epoch;
  return out;
}

RunResult run_scenario(const ScenarioConfig& config, ConcurrencyMode mode, std::uint64_t seed) {
  RunResult run;
  run.mode = mode;
  run.seed = seed;
  Simulator sim(config, mode, seed);
  run.epochs.reserve(config.epoch_count());
  while (!sim.done()) run.epochs.push_back(sim.step());
  return run;
}

}  // namespace qram::sim
