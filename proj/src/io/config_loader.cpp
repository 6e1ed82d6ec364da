#include "qram/io/config_loader.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <string_view>

#include <yaml-cpp/yaml.h>

#include "qram/errors.hpp"

namespace qram::io {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

std::string index_path(const std::string& base, std::size_t i) { return base + "[" + std::to_string(i) + "]"; }
std::string key_path(const std::string& base, std::string_view key) {
  return base.empty() ? std::string(key) : base + "." + std::string(key);
}

Location location_of(const YAML::Node& node) {
  const YAML::Mark m = node.Mark();
  if (m.is_null()) return {};
  return {m.line + 1, m.column + 1};
}

template <class T>
struct Kind;
template <>
struct Kind<double> {
  static constexpr const char* name = "a number";
};
template <>
struct Kind<int> {
  static constexpr const char* name = "an integer";
};
template <>
struct Kind<long long> {
  static constexpr const char* name = "an integer";
};
template <>
struct Kind<bool> {
  static constexpr const char* name = "true or false";
};
template <>
struct Kind<std::string> {
  static constexpr const char* name = "a string";
};

/// Typed access to a YAML tree that records locations and collects issues
/// instead of throwing.
class Reader {
 public:
  explicit Reader(LoadResult& out) : out_(out) {}

  void error(const YAML::Node& node, const std::string& message) { add(Severity::Error, location_of(node), message); }
  void error_at(Location at, const std::string& message) { add(Severity::Error, at, message); }

  bool is_map(const YAML::Node& node, const std::string& path) {
    record(path, node);
    if (node.IsMap()) return true;
    error(node, "'" + path + "' must be a mapping");
    return false;
  }

  bool is_seq(const YAML::Node& node, const std::string& path) {
    record(path, node);
    if (node.IsSequence()) return true;
    error(node, "'" + path + "' must be a sequence");
    return false;
  }

  void allow_keys(const YAML::Node& map, const std::string& path, std::initializer_list<std::string_view> keys) {
    for (const auto& kv : map) {
      const std::string key = kv.first.Scalar();
      if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
        error(kv.first, "unknown key '" + key_path(path, key) + "'");
      }
    }
  }

  template <class T>
  bool convert(const YAML::Node& node, const std::string& path, T& out) {
    record(path, node);
    if (!node.IsScalar()) {
      error(node, "'" + path + "' must be " + Kind<T>::name);
      return false;
    }
    try {
      out = node.as<T>();
      return true;
    } catch (const YAML::BadConversion&) {
      error(node, "'" + path + "' must be " + Kind<T>::name + ", got '" + node.Scalar() + "'");
      return false;
    }
  }

  template <class T>
  bool get(const YAML::Node& map, std::string_view key, const std::string& path, T& out) {
    const YAML::Node node = map[std::string(key)];
    if (!node) return false;
    return convert(node, key_path(path, key), out);
  }

  bool get_count(const YAML::Node& map, std::string_view key, const std::string& path, std::size_t& out) {
    long long v = 0;
    if (!get(map, key, path, v)) return false;
    if (v < 0) {
      error(map[std::string(key)], "'" + key_path(path, key) + "' must be nonnegative");
      return false;
    }
    out = static_cast<std::size_t>(v);
    return true;
  }

  void get_angle(const YAML::Node& map, std::string_view key, const std::string& path, double& radians) {
    double deg = 0.0;
    if (get(map, key, path, deg)) radians = deg * kDeg;
  }

  template <class T>
  void get_list(const YAML::Node& map, std::string_view key, const std::string& path, std::vector<T>& out) {
    const YAML::Node node = map[std::string(key)];
    if (!node) return;
    const std::string p = key_path(path, key);
    if (!is_seq(node, p)) return;
    std::vector<T> values;
    for (std::size_t i = 0; i < node.size(); ++i) {
      T v{};
      if (convert(node[i], index_path(p, i), v)) values.push_back(v);
    }
    out = std::move(values);
  }

  void get_vec3(const YAML::Node& map, std::string_view key, const std::string& path, sim::Vec3& out) {
    std::vector<double> v;
    get_list(map, key, path, v);
    if (!map[std::string(key)]) return;
    if (v.size() != 3) {
      error(map[std::string(key)], "'" + key_path(path, key) + "' must hold three numbers");
      return;
    }
    out = sim::Vec3(v[0], v[1], v[2]);
  }

  void record(const std::string& path, const YAML::Node& node) { out_.map.locations[path] = location_of(node); }

 private:
  void add(Severity s, Location at, const std::string& message) {
    out_.issues.push_back({s, out_.map.source, at.line, at.column, message});
  }

  LoadResult& out_;
};

void read_calibration(Reader& r, const YAML::Node& n, const std::string& path, models::SnrCalibration& c) {
  if (!r.is_map(n, path)) return;
  r.allow_keys(n, path,
               {"reference_snr_db", "range_m", "elements", "n_pulses", "pulse_width_s", "wavelength_m", "rcs_m2",
                "element_power_w", "element_gain", "noise_temperature_k"});
  r.get(n, "reference_snr_db", path, c.reference_snr_db);
  r.get(n, "range_m", path, c.range_m);
  r.get(n, "elements", path, c.elements);
  r.get(n, "n_pulses", path, c.n_pulses);
  r.get(n, "pulse_width_s", path, c.pulse_width_s);
  r.get(n, "wavelength_m", path, c.wavelength_m);
  r.get(n, "rcs_m2", path, c.rcs_m2);
  r.get(n, "element_power_w", path, c.element_power_w);
  r.get(n, "element_gain", path, c.element_gain);
  r.get(n, "noise_temperature_k", path, c.noise_temperature_k);
}

void read_system(Reader& r, const YAML::Node& n, models::SystemParams& s) {
  const std::string path = "system";
  if (!r.is_map(n, path)) return;
  r.allow_keys(n, path,
               {"n_az_max", "n_el_max", "element_spacing_m", "duty_limit", "noise_temperature_k", "element_power_w",
                "element_gain", "epoch_s", "snr_floor_db", "track_error_cap_m", "calibration"});
  r.get(n, "n_az_max", path, s.n_az_max);
  r.get(n, "n_el_max", path, s.n_el_max);
  r.get(n, "element_spacing_m", path, s.element_spacing_m);
  r.get(n, "duty_limit", path, s.duty_limit);
  r.get(n, "noise_temperature_k", path, s.noise_temperature_k);
  r.get(n, "element_power_w", path, s.element_power_w);
  r.get(n, "element_gain", path, s.element_gain);
  r.get(n, "epoch_s", path, s.epoch_s);
  r.get(n, "snr_floor_db", path, s.snr_floor_db);
  r.get(n, "track_error_cap_m", path, s.track_error_cap_m);
  if (n["calibration"]) read_calibration(r, n["calibration"], "system.calibration", s.calibration);
}

void read_mission(Reader& r, const YAML::Node& n, models::MissionParams& m) {
  const std::string path = "mission";
  if (!r.is_map(n, path)) return;
  r.allow_keys(n, path, {"false_alarm_rate", "detection_probability", "volume_sr"});
  r.get(n, "false_alarm_rate", path, m.false_alarm_rate);
  r.get(n, "detection_probability", path, m.detection_probability);
  r.get(n, "volume_sr", path, m.volume_sr);
}

void read_entity(Reader& r, const YAML::Node& n, const std::string& path, sim::EntityConfig& e) {
  if (!r.is_map(n, path)) return;
  r.allow_keys(n, path, {"id", "start", "legs", "rcs_m2", "process_noise", "priority", "randomize_start"});
  r.get(n, "id", path, e.id);
  r.get_vec3(n, "start", path, e.start);
  r.get(n, "rcs_m2", path, e.rcs_m2);
  r.get(n, "process_noise", path, e.process_noise);
  r.get(n, "priority", path, e.priority);
  r.get(n, "randomize_start", path, e.randomize_start);
  if (const YAML::Node legs = n["legs"]; legs && r.is_seq(legs, key_path(path, "legs"))) {
    for (std::size_t i = 0; i < legs.size(); ++i) {
      const std::string lp = index_path(key_path(path, "legs"), i);
      if (!r.is_map(legs[i], lp)) continue;
      r.allow_keys(legs[i], lp, {"duration_s", "velocity"});
      sim::Leg leg;
      r.get(legs[i], "duration_s", lp, leg.duration_s);
      r.get_vec3(legs[i], "velocity", lp, leg.velocity);
      e.legs.push_back(leg);
    }
  }
}

void read_params(Reader& r, const YAML::Node& n, const std::string& path, models::TaskParams& p) {
  if (!r.is_map(n, path)) return;
  r.allow_keys(n, path,
               {"weight", "quality_min", "quality_req", "shape", "band", "stretchable", "track", "instrumented_range_m",
                "sector_sr", "revisit_req_s", "revisit_max_s", "snr_margin_db", "reference_range_m",
                "reference_level_db", "reference_bandwidth_hz", "intercept_rate_hz", "dwell_req"});
  r.get(n, "weight", path, p.weight);
  r.get(n, "quality_min", path, p.quality_min);
  r.get(n, "quality_req", path, p.quality_req);
  r.get(n, "shape", path, p.shape);
  r.get(n, "stretchable", path, p.stretchable);
  r.get(n, "instrumented_range_m", path, p.instrumented_range_m);
  r.get(n, "sector_sr", path, p.sector_sr);
  r.get(n, "revisit_req_s", path, p.revisit_req_s);
  r.get(n, "revisit_max_s", path, p.revisit_max_s);
  r.get(n, "snr_margin_db", path, p.snr_margin_db);
  r.get(n, "reference_range_m", path, p.reference_range_m);
  r.get(n, "reference_level_db", path, p.reference_level_db);
  r.get(n, "reference_bandwidth_hz", path, p.reference_bandwidth_hz);
  r.get(n, "intercept_rate_hz", path, p.intercept_rate_hz);
  r.get(n, "dwell_req", path, p.dwell_req);
  if (const YAML::Node band = n["band"]) {
    const std::string bp = key_path(path, "band");
    if (r.is_map(band, bp)) {
      r.allow_keys(band, bp, {"center_hz", "width_hz"});
      r.get(band, "center_hz", bp, p.band.center_hz);
      r.get(band, "width_hz", bp, p.band.width_hz);
    }
  }
  if (const YAML::Node track = n["track"]) {
    const std::string tp = key_path(path, "track");
    if (r.is_map(track, tp)) {
      r.allow_keys(track, tp, {"k_range_m", "beta_m", "weight", "min_radial_velocity_mps"});
      r.get(track, "k_range_m", tp, p.track.k_range_m);
      r.get(track, "beta_m", tp, p.track.beta_m);
      r.get(track, "weight", tp, p.track.weight);
      r.get(track, "min_radial_velocity_mps", tp, p.track.min_radial_velocity_mps);
    }
  }
}

void read_grid(Reader& r, const YAML::Node& n, const std::string& path, models::ParameterGrid& g) {
  if (!r.is_map(n, path)) return;
  r.allow_keys(n, path,
               {"n_az", "n_el", "prf_hz", "n_pulses", "pulse_width_s", "bandwidth_hz", "wavelength_m",
                "dwell_fraction"});
  r.get_list(n, "n_az", path, g.n_az);
  r.get_list(n, "n_el", path, g.n_el);
  r.get_list(n, "prf_hz", path, g.prf_hz);
  r.get_list(n, "n_pulses", path, g.n_pulses);
  r.get_list(n, "pulse_width_s", path, g.pulse_width_s);
  r.get_list(n, "bandwidth_hz", path, g.bandwidth_hz);
  r.get_list(n, "wavelength_m", path, g.wavelength_m);
  r.get_list(n, "dwell_fraction", path, g.dwell_fraction);
}

void read_template(Reader& r, const YAML::Node& n, const std::string& path, sim::TaskTemplate& t) {
  if (!r.is_map(n, path)) return;
  r.allow_keys(n, path, {"id", "type", "params", "grid"});
  r.get(n, "id", path, t.id);
  if (r.get(n, "type", path, t.spec.type) && !models::parse_task_type(t.spec.type)) {
    r.error(n["type"], "unknown task type '" + t.spec.type + "' in " + path);
  }
  if (n["params"]) read_params(r, n["params"], key_path(path, "params"), t.spec.params);
  if (n["grid"]) read_grid(r, n["grid"], key_path(path, "grid"), t.spec.grid);
}

void read_request(Reader& r, const YAML::Node& n, const std::string& path, sim::RequestConfig& q) {
  if (!r.is_map(n, path)) return;
  r.allow_keys(n, path,
               {"id", "template", "t_start", "t_end", "after", "target", "range_m", "azimuth_deg", "elevation_deg",
                "loss_db", "period_s", "on_s", "work_s", "jitter"});
  r.get(n, "id", path, q.id);
  r.get(n, "template", path, q.template_id);
  r.get(n, "t_start", path, q.t_start);
  r.get(n, "t_end", path, q.t_end);
  r.get(n, "after", path, q.after);
  r.get(n, "target", path, q.target);
  r.get(n, "range_m", path, q.range_m);
  r.get_angle(n, "azimuth_deg", path, q.azimuth_rad);
  r.get_angle(n, "elevation_deg", path, q.elevation_rad);
  r.get(n, "loss_db", path, q.loss_db);
  r.get(n, "period_s", path, q.period_s);
  r.get(n, "on_s", path, q.on_s);
  r.get(n, "work_s", path, q.work_s);
  r.get(n, "jitter", path, q.jitter);
}

void read_emcon(Reader& r, const YAML::Node& n, const std::string& path, sim::EmconEvent& e) {
  if (!r.is_map(n, path)) return;
  r.allow_keys(n, path, {"t", "level"});
  r.get(n, "t", path, e.t);
  std::string level;
  if (!r.get(n, "level", path, level)) {
    r.error(n, "'" + path + "' needs a level");
    return;
  }
  std::transform(level.begin(), level.end(), level.begin(), [](unsigned char c) { return std::tolower(c); });
  if (level == "none") {
    e.level = models::EmconLevel::None;
  } else if (level == "bravo") {
    e.level = models::EmconLevel::Bravo;
  } else {
    r.error(n["level"], "unknown EMCON level '" + n["level"].Scalar() + "' (expected none or bravo)");
  }
}

void read_planning(Reader& r, const YAML::Node& n, sim::PlanningConfig& p) {
  const std::string path = "planning";
  if (!r.is_map(n, path)) return;
  r.allow_keys(n, path,
               {"mcts_iterations", "exploration_c", "warm_start", "max_group_size", "angular_threshold_deg",
                "band_overlap_hz", "multifunction_pairs", "multifunction_max_separation_deg",
                "multifunction_quality_factor", "isolation_penalty_db", "interleave_overhead_s", "thinning",
                "compound_weights", "bounds"});
  r.get_count(n, "mcts_iterations", path, p.mcts_iterations);
  r.get(n, "exploration_c", path, p.exploration_c);
  r.get(n, "warm_start", path, p.warm_start);
  r.get_count(n, "max_group_size", path, p.rule.max_group_size);
  r.get_angle(n, "angular_threshold_deg", path, p.rule.angular_threshold_rad);
  r.get(n, "band_overlap_hz", path, p.rule.band_overlap_hz);
  r.get_angle(n, "multifunction_max_separation_deg", path, p.rule.multifunction_max_separation_rad);
  r.get(n, "multifunction_quality_factor", path, p.penalties.multifunction_quality_factor);
  r.get(n, "isolation_penalty_db", path, p.penalties.isolation_penalty_db);
  r.get(n, "interleave_overhead_s", path, p.penalties.interleave_overhead_s);
  r.get_count(n, "thinning", path, p.thinning);
  if (const YAML::Node pairs = n["multifunction_pairs"]; pairs && r.is_seq(pairs, "planning.multifunction_pairs")) {
    p.rule.multifunction_pairs.clear();
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const std::string pp = index_path("planning.multifunction_pairs", i);
      std::vector<std::string> names;
      if (!r.is_seq(pairs[i], pp)) continue;
      for (std::size_t j = 0; j < pairs[i].size(); ++j) {
        std::string s;
        if (r.convert(pairs[i][j], index_path(pp, j), s)) names.push_back(s);
      }
      if (names.size() != 2) {
        r.error(pairs[i], "'" + pp + "' must name two task types");
        continue;
      }
      const auto a = models::parse_task_type(names[0]);
      const auto b = models::parse_task_type(names[1]);
      if (!a || !b) {
        r.error(pairs[i], "unknown task type in '" + pp + "'");
        continue;
      }
      p.rule.multifunction_pairs.emplace_back(*a, *b);
    }
  }
  std::vector<double> weights;
  r.get_list(n, "compound_weights", path, weights);
  if (n["compound_weights"]) {
    if (weights.size() == kResourceDims) {
      p.weights = {weights[0], weights[1]};
    } else {
      r.error(n["compound_weights"], "'planning.compound_weights' must hold two numbers");
    }
  }
  std::vector<double> bounds;
  r.get_list(n, "bounds", path, bounds);
  if (n["bounds"]) {
    if (bounds.size() == kResourceDims) {
      p.bounds = ResourceVector(bounds[0], bounds[1]);
    } else {
      r.error(n["bounds"], "'planning.bounds' must hold two numbers");
    }
  }
}

void read_document(Reader& r, const YAML::Node& root, sim::ScenarioConfig& c) {
  if (!r.is_map(root, "")) return;
  r.allow_keys(root, "",
               {"schema_version", "name", "duration_s", "system", "mission", "platform", "entities", "templates",
                "requests", "emcon", "randomization", "planning", "tracker"});
  int version = 0;
  if (!root["schema_version"]) {
    r.error(root, "missing 'schema_version'");
  } else if (r.get(root, "schema_version", "", version) && version != kConfigSchemaVersion) {
    r.error(root["schema_version"], "unsupported schema_version " + std::to_string(version) + " (expected " +
                                        std::to_string(kConfigSchemaVersion) + ")");
  }
  r.get(root, "name", "", c.name);
  r.get(root, "duration_s", "", c.duration_s);
  if (root["system"]) read_system(r, root["system"], c.system);
  if (root["mission"]) read_mission(r, root["mission"], c.mission);
  if (root["platform"]) read_entity(r, root["platform"], "platform", c.platform);
  if (const YAML::Node es = root["entities"]; es && r.is_seq(es, "entities")) {
    for (std::size_t i = 0; i < es.size(); ++i) {
      sim::EntityConfig e;
      read_entity(r, es[i], index_path("entities", i), e);
      c.entities.push_back(std::move(e));
    }
  }
  if (const YAML::Node ts = root["templates"]; ts && r.is_seq(ts, "templates")) {
    for (std::size_t i = 0; i < ts.size(); ++i) {
      sim::TaskTemplate t;
      read_template(r, ts[i], index_path("templates", i), t);
      c.templates.push_back(std::move(t));
    }
  }
  if (const YAML::Node qs = root["requests"]; qs && r.is_seq(qs, "requests")) {
    for (std::size_t i = 0; i < qs.size(); ++i) {
      sim::RequestConfig q;
      read_request(r, qs[i], index_path("requests", i), q);
      c.requests.push_back(std::move(q));
    }
  }
  if (const YAML::Node em = root["emcon"]; em && r.is_seq(em, "emcon")) {
    for (std::size_t i = 0; i < em.size(); ++i) {
      sim::EmconEvent e;
      read_emcon(r, em[i], index_path("emcon", i), e);
      c.emcon.push_back(e);
    }
  }
  if (const YAML::Node rn = root["randomization"]; rn && r.is_map(rn, "randomization")) {
    r.allow_keys(rn, "randomization", {"time_jitter_s", "start_offset_m"});
    r.get(rn, "time_jitter_s", "randomization", c.randomization.time_jitter_s);
    r.get(rn, "start_offset_m", "randomization", c.randomization.start_offset_m);
  }
  if (root["planning"]) read_planning(r, root["planning"], c.planning);
  if (const YAML::Node tr = root["tracker"]; tr && r.is_map(tr, "tracker")) {
    r.allow_keys(tr, "tracker", {"init_position_sigma_m", "init_velocity_sigma_mps"});
    r.get(tr, "init_position_sigma_m", "tracker", c.tracker.init_position_sigma_m);
    r.get(tr, "init_velocity_sigma_mps", "tracker", c.tracker.init_velocity_sigma_mps);
  }
}

/// Collects semantic issues against the source map.
class Checker {
 public:
  Checker(const SourceMap& map, std::vector<Issue>& out) : map_(map), out_(out) {}

  void error(const std::string& path, const std::string& message) { add(Severity::Error, path, message); }
  void warning(const std::string& path, const std::string& message) { add(Severity::Warning, path, message); }

  void positive(const std::string& path, double v) {
    if (!(v > 0.0) || !std::isfinite(v)) error(path, "'" + path + "' must be positive");
  }
  void nonnegative(const std::string& path, double v) {
    if (!(v >= 0.0)) error(path, "'" + path + "' must be nonnegative");
  }
  void nonempty(const std::string& path, const std::string& v) {
    if (v.empty()) error(path, "'" + path + "' must not be empty");
  }

 private:
  void add(Severity s, const std::string& path, const std::string& message) {
    // fall back to the closest recorded parent
    std::string p = path;
    Location at = map_.find(p);
    while (at.line == 0 && !p.empty()) {
      const auto cut = p.find_last_of(".[");
      p = cut == std::string::npos ? std::string() : p.substr(0, cut);
      at = map_.find(p);
    }
    out_.push_back({s, map_.source, at.line, at.column, message});
  }

  const SourceMap& map_;
  std::vector<Issue>& out_;
};

void check_entity(Checker& c, const sim::EntityConfig& e, const std::string& path) {
  c.nonempty(key_path(path, "id"), e.id);
  c.positive(key_path(path, "rcs_m2"), e.rcs_m2);
  c.nonnegative(key_path(path, "process_noise"), e.process_noise);
  c.positive(key_path(path, "priority"), e.priority);
  for (std::size_t i = 0; i < e.legs.size(); ++i) {
    c.positive(key_path(index_path(key_path(path, "legs"), i), "duration_s"), e.legs[i].duration_s);
  }
}

/// Environment used for the static feasibility check of a template.
models::Environment nominal_environment(const sim::ScenarioConfig& config) {
  models::Environment env;
  env.system = config.system;
  env.mission = config.mission;
  env.task.range_m = 20e3;
  env.task.radial_velocity_mps = 100.0;
  return env;
}

template <class T>
bool all_positive(const std::vector<T>& v) {
  return std::all_of(v.begin(), v.end(), [](T x) { return x > T{0}; });
}

void check_grid(Checker& c, const models::ParameterGrid& g, const std::string& path) {
  auto list = [&](const char* key, bool ok, bool empty) {
    const std::string p = key_path(path, key);
    if (empty) c.error(p, "'" + p + "' must not be empty");
    else if (!ok) c.error(p, "'" + p + "' must hold positive values");
  };
  list("n_az", all_positive(g.n_az), g.n_az.empty());
  list("n_el", all_positive(g.n_el), g.n_el.empty());
  list("prf_hz", all_positive(g.prf_hz), g.prf_hz.empty());
  list("n_pulses", all_positive(g.n_pulses), g.n_pulses.empty());
  list("pulse_width_s", all_positive(g.pulse_width_s), g.pulse_width_s.empty());
  list("bandwidth_hz", all_positive(g.bandwidth_hz), g.bandwidth_hz.empty());
  list("wavelength_m", all_positive(g.wavelength_m), g.wavelength_m.empty());
  list("dwell_fraction", all_positive(g.dwell_fraction), g.dwell_fraction.empty());
}

}  // namespace

std::string Issue::format() const {
  std::ostringstream os;
  os << source;
  if (line > 0) os << ':' << line << ':' << column;
  os << ": " << (severity == Severity::Error ? "error" : "warning") << ": " << message;
  return os.str();
}

Location SourceMap::find(const std::string& path) const {
  const auto it = locations.find(path);
  return it == locations.end() ? Location{} : it->second;
}

std::size_t LoadResult::errors() const {
  return static_cast<std::size_t>(
      std::count_if(issues.begin(), issues.end(), [](const Issue& i) { return i.severity == Severity::Error; }));
}

std::size_t LoadResult::warnings() const { return issues.size() - errors(); }

std::vector<Issue> check_scenario(const sim::ScenarioConfig& config, const SourceMap& map) {
  std::vector<Issue> issues;
  Checker c(map, issues);
  const auto& s = config.system;

  c.positive("duration_s", config.duration_s);
  c.positive("system.epoch_s", s.epoch_s);
  if (s.n_az_max < 1) c.error("system.n_az_max", "'system.n_az_max' must be at least 1");
  if (s.n_el_max < 1) c.error("system.n_el_max", "'system.n_el_max' must be at least 1");
  if (!(s.duty_limit > 0.0 && s.duty_limit <= 1.0)) c.error("system.duty_limit", "'system.duty_limit' must lie in (0, 1]");
  c.positive("system.element_spacing_m", s.element_spacing_m);
  c.positive("system.noise_temperature_k", s.noise_temperature_k);
  c.positive("system.element_power_w", s.element_power_w);
  c.positive("system.element_gain", s.element_gain);
  c.positive("system.track_error_cap_m", s.track_error_cap_m);
  c.positive("system.calibration.range_m", s.calibration.range_m);
  if (s.calibration.elements < 1 || s.calibration.n_pulses < 1) {
    c.error("system.calibration", "calibration elements and n_pulses must be at least 1");
  }
  const auto& m = config.mission;
  if (!(m.false_alarm_rate > 0.0 && m.false_alarm_rate < 1.0)) {
    c.error("mission.false_alarm_rate", "'mission.false_alarm_rate' must lie in (0, 1)");
  }
  if (!(m.detection_probability > 0.0 && m.detection_probability < 1.0)) {
    c.error("mission.detection_probability", "'mission.detection_probability' must lie in (0, 1)");
  }
  c.positive("mission.volume_sr", m.volume_sr);
  c.nonnegative("randomization.time_jitter_s", config.randomization.time_jitter_s);
  c.nonnegative("randomization.start_offset_m", config.randomization.start_offset_m);
  c.positive("tracker.init_position_sigma_m", config.tracker.init_position_sigma_m);
  c.positive("tracker.init_velocity_sigma_mps", config.tracker.init_velocity_sigma_mps);

  const auto& p = config.planning;
  if (p.mcts_iterations < 1) c.error("planning.mcts_iterations", "'planning.mcts_iterations' must be at least 1");
  if (p.rule.max_group_size < 1) c.error("planning.max_group_size", "'planning.max_group_size' must be at least 1");
  if (p.thinning < 1) c.error("planning.thinning", "'planning.thinning' must be at least 1");
  c.nonnegative("planning.exploration_c", p.exploration_c);
  c.nonnegative("planning.interleave_overhead_s", p.penalties.interleave_overhead_s);
  c.nonnegative("planning.isolation_penalty_db", p.penalties.isolation_penalty_db);
  if (!(p.penalties.multifunction_quality_factor > 0.0 && p.penalties.multifunction_quality_factor <= 1.0)) {
    c.error("planning.multifunction_quality_factor", "'planning.multifunction_quality_factor' must lie in (0, 1]");
  }
  try {
    validate_weights(p.weights);
  } catch (const std::exception&) {
    c.error("planning.compound_weights", "'planning.compound_weights' must be nonnegative and sum to 1");
  }
  if (!(p.bounds.elements() > 0.0 && p.bounds.elements() <= 1.0 && p.bounds.time() > 0.0 && p.bounds.time() <= 1.0)) {
    c.error("planning.bounds", "'planning.bounds' must lie in (0, 1]");
  }

  check_entity(c, config.platform, "platform");
  std::set<std::string> entity_ids;
  for (std::size_t i = 0; i < config.entities.size(); ++i) {
    const std::string path = index_path("entities", i);
    check_entity(c, config.entities[i], path);
    if (!entity_ids.insert(config.entities[i].id).second) {
      c.error(path, "duplicate entity id '" + config.entities[i].id + "'");
    }
  }

  std::set<std::string> template_ids;
  const models::Environment nominal = nominal_environment(config);
  const bool system_ok = s.epoch_s > 0.0 && s.duty_limit > 0.0 && s.n_az_max > 0 && s.n_el_max > 0;
  for (std::size_t i = 0; i < config.templates.size(); ++i) {
    const auto& t = config.templates[i];
    const std::string path = index_path("templates", i);
    c.nonempty(key_path(path, "id"), t.id);
    if (!template_ids.insert(t.id).second) c.error(path, "duplicate template id '" + t.id + "'");
    if (!models::parse_task_type(t.spec.type)) {
      if (t.spec.type.empty()) c.error(path, "'" + path + "' needs a type");
      continue;  // unknown names were reported while parsing
    }
    c.positive(key_path(path, "params.weight"), t.spec.params.weight);
    const std::size_t before = issues.size();
    check_grid(c, t.spec.grid, key_path(path, "grid"));
    if (issues.size() != before || !system_ok) continue;
    try {
      if (models::enumerate_configs(t.spec, nominal).size() < 2) {
        c.warning(key_path(path, "grid"), "task '" + t.id + "' has no feasible configuration besides off");
      }
    } catch (const std::exception& e) {
      c.error(key_path(path, "grid"), "task '" + t.id + "': " + e.what());
    }
  }

  std::set<std::string> request_ids;
  for (const auto& q : config.requests) request_ids.insert(q.id);
  std::set<std::string> seen_requests;
  for (std::size_t i = 0; i < config.requests.size(); ++i) {
    const auto& q = config.requests[i];
    const std::string path = index_path("requests", i);
    c.nonempty(key_path(path, "id"), q.id);
    if (!seen_requests.insert(q.id).second) c.error(path, "duplicate request id '" + q.id + "'");
    const sim::TaskTemplate* t = config.find_template(q.template_id);
    if (t == nullptr) {
      c.error(key_path(path, "template"), "request '" + q.id + "' references unknown template '" + q.template_id + "'");
    }
    if (!q.target.empty() && config.find_entity(q.target) == nullptr) {
      c.error(key_path(path, "target"), "request '" + q.id + "' references unknown entity '" + q.target + "'");
    }
    if (t != nullptr && t->spec.type == "aa_track" && q.target.empty()) {
      c.error(path, "track request '" + q.id + "' needs a target");
    }
    if (!q.after.empty()) {
      if (q.after == q.id) {
        c.error(key_path(path, "after"), "request '" + q.id + "' waits for itself");
      } else if (request_ids.count(q.after) == 0) {
        c.error(key_path(path, "after"), "request '" + q.id + "' waits for unknown request '" + q.after + "'");
      }
    }
    c.nonnegative(key_path(path, "t_start"), q.t_start);
    if (!(q.t_end > q.t_start)) c.error(key_path(path, "t_end"), "request '" + q.id + "' ends before it starts");
    c.positive(key_path(path, "range_m"), q.range_m);
    c.nonnegative(key_path(path, "period_s"), q.period_s);
    c.nonnegative(key_path(path, "on_s"), q.on_s);
    c.nonnegative(key_path(path, "work_s"), q.work_s);
    if (q.period_s > 0.0 && !(q.on_s > 0.0 && q.on_s <= q.period_s)) {
      c.error(key_path(path, "on_s"), "recurring request '" + q.id + "' needs 0 < on_s <= period_s");
    }
  }
  // dependency cycles
  for (const auto& q : config.requests) {
    std::set<std::string> chain{q.id};
    const sim::RequestConfig* cur = &q;
    while (!cur->after.empty()) {
      auto it = std::find_if(config.requests.begin(), config.requests.end(),
                             [&](const sim::RequestConfig& x) { return x.id == cur->after; });
      if (it == config.requests.end()) break;
      if (!chain.insert(it->id).second) {
        const auto idx = static_cast<std::size_t>(&q - config.requests.data());
        c.error(key_path(index_path("requests", idx), "after"), "request '" + q.id + "' has a cyclic dependency");
        break;
      }
      cur = &*it;
    }
  }

  for (std::size_t i = 0; i < config.emcon.size(); ++i) {
    const std::string path = index_path("emcon", i);
    c.nonnegative(key_path(path, "t"), config.emcon[i].t);
    if (i > 0 && config.emcon[i].t < config.emcon[i - 1].t) {
      c.error(key_path(path, "t"), "EMCON events must be in nondecreasing time order");
    }
  }
  return issues;
}

LoadResult parse_scenario(const std::string& text, const std::string& source) {
  LoadResult out;
  out.map.source = source;
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    out.issues.push_back({Severity::Error, source, e.mark.is_null() ? 0 : e.mark.line + 1,
                          e.mark.is_null() ? 0 : e.mark.column + 1, e.msg});
    return out;
  }
  sim::ScenarioConfig config;
  Reader reader(out);
  if (!root || root.IsNull()) {
    out.issues.push_back({Severity::Error, source, 0, 0, "empty document"});
    return out;
  }
  read_document(reader, root, config);
  const auto semantic = check_scenario(config, out.map);
  out.issues.insert(out.issues.end(), semantic.begin(), semantic.end());
  out.config = std::move(config);
  return out;
}

LoadResult load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    LoadResult out;
    out.map.source = path.string();
    out.issues.push_back({Severity::Error, path.string(), 0, 0, "cannot open scenario file '" + path.string() + "'"});
    return out;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path.string());
}

sim::ScenarioConfig load_scenario_or_throw(const std::filesystem::path& path) {
  LoadResult r = load_scenario(path);
  if (!r.ok()) {
    std::string msg;
    for (const auto& i : r.issues) {
      if (i.severity == Severity::Error) msg += i.format() + "\n";
    }
    throw ConfigError(msg);
  }
  return std::move(*r.config);
}

}  // namespace qram::io
