#include "qram/models/tracking.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qram/models/radar.hpp"

namespace qram::models {

MeasurementSigmas measurement_sigmas(const TaskConfiguration& config, const Environment& env, double snr) {
  const double snr_lin = db_to_linear(snr);
  const double root = std::sqrt(2.0 * snr_lin);
  const double range = env.task.range_m;
  const double spacing = env.system.element_spacing_m;
  MeasurementSigmas s;
  s.range_m = kSpeedOfLight / (2.0 * config.bandwidth_hz * root);
  s.azimuth_m = range * beamwidth_rad(config.n_az, config.wavelength_m, spacing) / (1.6 * root);
  s.elevation_m = range * beamwidth_rad(config.n_el, config.wavelength_m, spacing) / (1.6 * root);
  return s;
}

double steady_state_position_variance(double q, double dt, double r) {
  if (q < 0.0 || dt < 0.0 || r < 0.0) throw std::domain_error("negative noise intensity or interval");
  if (q == 0.0 || dt == 0.0) return 0.0;
  if (r == 0.0) {
    const double k = 1.0 + 1.0 / std::sqrt(3.0);
    return q * dt * dt * dt * k * k / 4.0;
  }
  // With s = P_prior/r + 1 and y = sqrt(s), the Riccati fixed point reduces to
  // the palindromic quartic y^4 - L y^3 + (L^2/6 - 2) y^2 - L y + 1 = 0,
  // L^2 = q dt^3 / r. Substituting z = y + 1/y leaves z^2 - L z + L^2/6 - 4 = 0.
  const double lambda = std::sqrt(q * dt * dt * dt / r);
  const double l2 = lambda * lambda / 3.0;
  const double z_minus_2 = 0.5 * (lambda + l2 / (std::sqrt(l2 + 16.0) + 4.0));
  const double root = std::sqrt(z_minus_2 * (z_minus_2 + 4.0));  // sqrt(z^2 - 4)
  const double y_minus_1 = 0.5 * (z_minus_2 + root);
  return r * y_minus_1 * (y_minus_1 + 2.0);
}

double track_error_model(const TaskConfiguration& config, const Environment& env, double time_since_update_s) {
  if (time_since_update_s < 0.0) throw std::domain_error("time since update is negative");
  const double cap = env.system.track_error_cap_m;
  if (config.off) return cap;
  const double snr = snr_db(config, env);
  if (snr < env.system.snr_floor_db) return cap;
  const auto sigmas = measurement_sigmas(config, env, snr);
  const double q = env.task.process_noise;
  double variance = 0.0;
  for (double sigma : {sigmas.range_m, sigmas.azimuth_m, sigmas.elevation_m}) {
    variance += steady_state_position_variance(q, time_since_update_s, sigma * sigma);
  }
  return std::min(std::sqrt(variance), cap);
}

QualityRecord tracking_quality(const TaskConfiguration& config, const Environment& env, double dt_s) {
  const double error = track_error_model(config, env, dt_s);
  QualityRecord record;
  record.set("track_error", error);
  record.set("quality", 1.0 / std::max(error, 1e-6));
  return record;
}

double track_task_duration_s(const TaskConfiguration& config, double range_m) {
  return (config.n_pulses - 1) / config.prf_hz + config.pulse_width_s + 2.0 * range_m / kSpeedOfLight;
}

ResourceVector tracking_resources(const TaskConfiguration& config, const Environment& env) {
  if (config.off) return {};
  const double elements = static_cast<double>(config.elements()) / env.system.total_elements();
  return {elements, track_task_duration_s(config, env.task.range_m) / env.system.epoch_s};
}

double track_weight(const Environment& env, const UtilityParams& params) {
  const double v = std::max(std::abs(env.task.radial_velocity_mps), params.min_radial_velocity_mps);
  return params.weight * env.task.priority * v / (env.task.range_m + params.k_range_m);
}

double tracking_utility(double quality, const Environment& env, const UtilityParams& params) {
  if (quality < 0.0) throw std::domain_error("quality must be nonnegative");
  return track_weight(env, params) * (1.0 - std::exp(-params.beta_m * quality));
}

}  // namespace qram::models
