#include "qram/models/task_models.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "qram/errors.hpp"
#include "qram/models/radar.hpp"
#include "qram/models/tracking.hpp"
#include "qram/models/utility.hpp"

namespace qram::models {

namespace {

constexpr std::array<std::string_view, kTaskTypeCount> kTypeNames{
    "aa_surveillance", "aa_track",  "aa_hrrp",    "ag_sar_stripmap", "ag_gmti_was",
    "ew_rwr",          "ew_esm",    "ew_attack",  "comm_datalink",   "comm_sar_link",
};

double element_fraction(const TaskConfiguration& config, const Environment& env) {
  return static_cast<double>(config.elements()) / env.system.total_elements();
}

bool aperture_ok(const TaskConfiguration& c, const Environment& env) {
  return c.n_az >= 1 && c.n_el >= 1 && c.n_az <= env.system.n_az_max && c.n_el <= env.system.n_el_max;
}

bool pulses_ok(const TaskConfiguration& c, const Environment& env) {
  return c.prf_hz > 0.0 && c.pulse_width_s > 0.0 && c.n_pulses >= 1 && c.wavelength_m > 0.0 &&
         c.prf_hz * c.pulse_width_s <= env.system.duty_limit;
}

bool dwell_ok(const TaskConfiguration& c) { return c.dwell_fraction > 0.0 && c.dwell_fraction <= 1.0; }

double pulse_dwell_s(const TaskConfiguration& c, double range_m) {
  return (c.n_pulses - 1) / c.prf_hz + c.pulse_width_s + 2.0 * range_m / kSpeedOfLight;
}

std::size_t beams_for(const TaskConfiguration& c, const Environment& env, double solid_angle_sr) {
  const double az = beamwidth_rad(c.n_az, c.wavelength_m, env.system.element_spacing_m);
  const double el = beamwidth_rad(c.n_el, c.wavelength_m, env.system.element_spacing_m);
  return static_cast<std::size_t>(std::max(1.0, std::ceil(solid_angle_sr / (az * el))));
}

double snr_ramp(double snr, double threshold, double margin) {
  return ramp_utility(snr, threshold, threshold + margin, 3.0);
}

ModelEvaluation finish(ResourceVector resources, QualityRecord quality, double nonweighted, double utility) {
  ModelEvaluation e;
  e.resources = resources;
  e.quality = std::move(quality);
  e.nonweighted_utility = nonweighted;
  e.utility = clamp_utility(utility);
  return e;
}

class TrackModel final : public PerformanceModel {
 public:
  TaskType type() const override { return TaskType::AirTrack; }
  bool feasible(const TaskConfiguration& c, const Environment& env) const override {
    return c.off || (aperture_ok(c, env) && pulses_ok(c, env) && c.bandwidth_hz > 0.0 &&
                     tracking_resources(c, env).time() <= 1.0);
  }
  ModelEvaluation evaluate(const TaskConfiguration& c, const Environment& env, const TaskParams& p,
                           double quality_factor) const override {
    if (c.off) return {};
    const double error = track_error_model(c, env, env.system.epoch_s);
    const double q = quality_factor / std::max(error, 1e-6);
    QualityRecord quality;
    quality.set("track_error", 1.0 / q);
    quality.set("quality", q);
    const double nonweighted = 1.0 - std::exp(-p.track.beta_m * q);
    double baseline = 0.0;
    if (env.task.coast_error_m > 0.0) {
      const double coast = std::min(env.task.coast_error_m, env.system.track_error_cap_m);
      baseline = 1.0 - std::exp(-p.track.beta_m / coast);
    }
    const double w = track_weight(env, p.track);
    return finish(tracking_resources(c, env), std::move(quality), nonweighted, w * (nonweighted - baseline));
  }
};

class SurveillanceModel final : public PerformanceModel {
 public:
  TaskType type() const override { return TaskType::AirSurveillance; }
  bool feasible(const TaskConfiguration& c, const Environment& env) const override {
    return c.off || (aperture_ok(c, env) && pulses_ok(c, env) && dwell_ok(c));
  }
  ModelEvaluation evaluate(const TaskConfiguration& c, const Environment& env, const TaskParams& p,
                           double quality_factor) const override {
    if (c.off) return {};
    const double frame_s =
        static_cast<double>(beams_for(c, env, env.mission.volume_sr)) * pulse_dwell_s(c, p.instrumented_range_m);
    const double revisit_s = frame_s / c.dwell_fraction;
    const double threshold = detection_threshold_db(env.mission.false_alarm_rate, env.mission.detection_probability);
    const double detection_range =
        quality_factor * env.task.range_m * std::pow(10.0, (snr_db(c, env) - threshold) / 40.0);
    QualityRecord quality;
    quality.set("detection_range", detection_range);
    quality.set("revisit", revisit_s);
    const double nonweighted = ramp_utility(detection_range, p.quality_min, p.quality_req, p.shape) *
                               ramp_utility(revisit_s, p.revisit_max_s, p.revisit_req_s, p.shape);
    return finish({element_fraction(c, env), c.dwell_fraction}, std::move(quality), nonweighted,
                  p.weight * nonweighted);
  }
};

class HrrpModel final : public PerformanceModel {
 public:
  TaskType type() const override { return TaskType::AirHrrp; }
  bool feasible(const TaskConfiguration& c, const Environment& env) const override {
    return c.off || (aperture_ok(c, env) && pulses_ok(c, env) && c.bandwidth_hz > 0.0 &&
                     pulse_dwell_s(c, env.task.range_m) <= env.system.epoch_s);
  }
  ModelEvaluation evaluate(const TaskConfiguration& c, const Environment& env, const TaskParams& p,
                           double quality_factor) const override {
    if (c.off) return {};
    const double snr = snr_db(c, env);
    const double threshold = detection_threshold_db(env.mission.false_alarm_rate, env.mission.detection_probability);
    const double resolution = kSpeedOfLight / (2.0 * c.bandwidth_hz) / quality_factor;
    QualityRecord quality;
    quality.set("range_resolution", resolution);
    quality.set("snr_db", snr);
    const double nonweighted =
        ramp_utility(resolution, p.quality_min, p.quality_req, p.shape) * snr_ramp(snr, threshold, p.snr_margin_db);
    const ResourceVector resources{element_fraction(c, env), pulse_dwell_s(c, env.task.range_m) / env.system.epoch_s};
    return finish(resources, std::move(quality), nonweighted, p.weight * nonweighted);
  }
};

class SarModel final : public PerformanceModel {
 public:
  TaskType type() const override { return TaskType::StripmapSar; }
  bool feasible(const TaskConfiguration& c, const Environment& env) const override {
    return c.off || (aperture_ok(c, env) && pulses_ok(c, env) && c.bandwidth_hz > 0.0 && dwell_ok(c));
  }
  ModelEvaluation evaluate(const TaskConfiguration& c, const Environment& env, const TaskParams& p,
                           double quality_factor) const override {
    if (c.off) return {};
    const double snr = snr_db(c, env);
    const double resolution = kSpeedOfLight / (2.0 * c.bandwidth_hz) / quality_factor;
    QualityRecord quality;
    quality.set("resolution", resolution);
    quality.set("snr_db", snr);
    const double nonweighted = ramp_utility(resolution, p.quality_min, p.quality_req, p.shape) *
                               snr_ramp(snr, env.system.snr_floor_db, p.snr_margin_db);
    // utility accrues with the collection time actually granted
    return finish({element_fraction(c, env), c.dwell_fraction}, std::move(quality), nonweighted,
                  p.weight * nonweighted * c.dwell_fraction);
  }
};

class GmtiModel final : public PerformanceModel {
 public:
  TaskType type() const override { return TaskType::GmtiWideArea; }
  bool feasible(const TaskConfiguration& c, const Environment& env) const override {
    return c.off || (aperture_ok(c, env) && pulses_ok(c, env) && dwell_ok(c));
  }
  ModelEvaluation evaluate(const TaskConfiguration& c, const Environment& env, const TaskParams& p,
                           double quality_factor) const override {
    if (c.off) return {};
    const double frame_s =
        static_cast<double>(beams_for(c, env, p.sector_sr)) * pulse_dwell_s(c, p.instrumented_range_m);
    const double coverage = std::min(1.0, c.dwell_fraction * env.system.epoch_s / frame_s) * quality_factor;
    const double snr = snr_db(c, env);
    const double threshold = detection_threshold_db(env.mission.false_alarm_rate, env.mission.detection_probability);
    QualityRecord quality;
    quality.set("coverage", coverage);
    quality.set("snr_db", snr);
    const double nonweighted =
        ramp_utility(coverage, p.quality_min, p.quality_req, p.shape) * snr_ramp(snr, threshold, p.snr_margin_db);
    return finish({element_fraction(c, env), c.dwell_fraction}, std::move(quality), nonweighted,
                  p.weight * nonweighted);
  }
};

class InterceptModel final : public PerformanceModel {
 public:
  explicit InterceptModel(TaskType t) : type_(t) {}
  TaskType type() const override { return type_; }
  bool feasible(const TaskConfiguration& c, const Environment& env) const override {
    return c.off || (aperture_ok(c, env) && dwell_ok(c));
  }
  ModelEvaluation evaluate(const TaskConfiguration& c, const Environment& env, const TaskParams& p,
                           double quality_factor) const override {
    if (c.off) return {};
    const double margin = p.reference_level_db + 10.0 * std::log10(element_fraction(c, env)) -
                          20.0 * std::log10(env.task.range_m / p.reference_range_m) - env.task.loss_db;
    const double intercept =
        margin < 0.0 ? 0.0
                     : quality_factor * (1.0 - std::exp(-p.intercept_rate_hz * c.dwell_fraction * env.system.epoch_s));
    QualityRecord quality;
    quality.set("intercept_probability", intercept);
    quality.set("sensitivity_margin_db", margin);
    const double nonweighted = ramp_utility(intercept, p.quality_min, p.quality_req, p.shape);
    return finish({element_fraction(c, env), c.dwell_fraction}, std::move(quality), nonweighted,
                  p.weight * nonweighted);
  }

 private:
  TaskType type_;
};

class AttackModel final : public PerformanceModel {
 public:
  TaskType type() const override { return TaskType::ElectronicAttack; }
  bool feasible(const TaskConfiguration& c, const Environment& env) const override {
    return c.off || (aperture_ok(c, env) && dwell_ok(c));
  }
  ModelEvaluation evaluate(const TaskConfiguration& c, const Environment& env, const TaskParams& p,
                           double quality_factor) const override {
    if (c.off) return {};
    // self-protection geometry: J/S grows with R^2
    const double js = p.reference_level_db + 20.0 * std::log10(element_fraction(c, env)) +
                      20.0 * std::log10(env.task.range_m / p.reference_range_m) - env.task.loss_db +
                      10.0 * std::log10(quality_factor);
    const double effectiveness = std::min(1.0, c.dwell_fraction / p.dwell_req);
    QualityRecord quality;
    quality.set("jam_to_signal_db", js);
    quality.set("effectiveness", effectiveness);
    const double nonweighted = ramp_utility(js, p.quality_min, p.quality_req, p.shape) * effectiveness;
    return finish({element_fraction(c, env), c.dwell_fraction}, std::move(quality), nonweighted,
                  p.weight * nonweighted);
  }
};

class LinkModel final : public PerformanceModel {
 public:
  explicit LinkModel(TaskType t) : type_(t) {}
  TaskType type() const override { return type_; }
  bool feasible(const TaskConfiguration& c, const Environment& env) const override {
    return c.off || (aperture_ok(c, env) && dwell_ok(c) && c.bandwidth_hz > 0.0);
  }
  ModelEvaluation evaluate(const TaskConfiguration& c, const Environment& env, const TaskParams& p,
                           double quality_factor) const override {
    if (c.off) return {};
    // one-way budget: radiated power and gain both scale with the element count
    const double snr = p.reference_level_db + 20.0 * std::log10(element_fraction(c, env)) -
                       20.0 * std::log10(env.task.range_m / p.reference_range_m) -
                       10.0 * std::log10(c.bandwidth_hz / p.reference_bandwidth_hz) - env.task.loss_db;
    const double rate = quality_factor * c.dwell_fraction * c.bandwidth_hz * std::log2(1.0 + db_to_linear(snr));
    QualityRecord quality;
    quality.set("data_rate", rate);
    quality.set("link_snr_db", snr);
    const double nonweighted = ramp_utility(rate, p.quality_min, p.quality_req, p.shape);
    return finish({element_fraction(c, env), c.dwell_fraction}, std::move(quality), nonweighted,
                  p.weight * nonweighted);
  }

 private:
  TaskType type_;
};

struct Registry {
  std::array<std::unique_ptr<PerformanceModel>, kTaskTypeCount> models;

  Registry() {
    put(std::make_unique<SurveillanceModel>());
    put(std::make_unique<TrackModel>());
    put(std::make_unique<HrrpModel>());
    put(std::make_unique<SarModel>());
    put(std::make_unique<GmtiModel>());
    put(std::make_unique<InterceptModel>(TaskType::RadarWarning));
    put(std::make_unique<InterceptModel>(TaskType::EsmSurveillance));
    put(std::make_unique<AttackModel>());
    put(std::make_unique<LinkModel>(TaskType::DataLink));
    put(std::make_unique<LinkModel>(TaskType::SarImageLink));
  }

  void put(std::unique_ptr<PerformanceModel> m) {
    const auto idx = static_cast<std::size_t>(m->type());
    models[idx] = std::move(m);
  }
};

const Registry& registry() {
  static const Registry instance;
  return instance;
}

}  // namespace

std::string_view to_string(TaskType type) { return kTypeNames[static_cast<std::size_t>(type)]; }

std::optional<TaskType> parse_task_type(std::string_view name) {
  for (std::size_t i = 0; i < kTypeNames.size(); ++i) {
    if (kTypeNames[i] == name) return static_cast<TaskType>(i);
  }
  return std::nullopt;
}

const std::array<TaskType, kTaskTypeCount>& all_task_types() {
  static const std::array<TaskType, kTaskTypeCount> types = [] {
    std::array<TaskType, kTaskTypeCount> t{};
    for (std::size_t i = 0; i < kTaskTypeCount; ++i) t[i] = static_cast<TaskType>(i);
    return t;
  }();
  return types;
}

EmissionClass emission_class(TaskType type) {
  switch (type) {
    case TaskType::AirSurveillance:
    case TaskType::AirTrack:
    case TaskType::AirHrrp:
    case TaskType::StripmapSar:
    case TaskType::GmtiWideArea:
      return EmissionClass::Radar;
    case TaskType::ElectronicAttack:
      return EmissionClass::ElectronicAttack;
    case TaskType::DataLink:
    case TaskType::SarImageLink:
      return EmissionClass::Communication;
    case TaskType::RadarWarning:
    case TaskType::EsmSurveillance:
      return EmissionClass::Passive;
  }
  return EmissionClass::Passive;
}

bool transmits(TaskType type) { return emission_class(type) != EmissionClass::Passive; }

bool PerformanceModel::feasible(const TaskConfiguration& config, const Environment& env) const {
  return config.off || aperture_ok(config, env);
}

const PerformanceModel& model_for(TaskType type) { return *registry().models[static_cast<std::size_t>(type)]; }

ModelEvaluation generic_task_model(std::string_view type_name, const TaskConfiguration& config,
                                   const Environment& env, const TaskParams& params, double quality_factor) {
  const auto type = parse_task_type(type_name);
  if (!type) throw ConfigError("unregistered task type '" + std::string(type_name) + "'");
  return generic_task_model(*type, config, env, params, quality_factor);
}

ModelEvaluation generic_task_model(TaskType type, const TaskConfiguration& config, const Environment& env,
                                   const TaskParams& params, double quality_factor) {
  return model_for(type).evaluate(config, env, params, quality_factor);
}

}  // namespace qram::models
