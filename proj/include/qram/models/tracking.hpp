#pragma once

#include "qram/core/resource.hpp"
#include "qram/core/task_config.hpp"
#include "qram/models/environment.hpp"

namespace qram::models {

/// Utility constants of the track update task.
struct UtilityParams {
  double k_range_m = 20e3;             ///< K_R
  double beta_m = 1000.0;              ///< quality saturation scale
  double weight = 1.0;                 ///< per-task-type multiplier on w
  double min_radial_velocity_mps = 0;  ///< floor on |v| in the weight (0 keeps the plain form)
};

/// 1-sigma measurement errors of one track dwell.
struct MeasurementSigmas {
  double range_m = 0.0;
  double azimuth_m = 0.0;    ///< cross-range, azimuth plane
  double elevation_m = 0.0;  ///< cross-range, elevation plane
};

/// Measurement accuracy at the given integrated SNR (dB).
MeasurementSigmas measurement_sigmas(const TaskConfiguration& config, const Environment& env, double snr_db);

/// Steady-state a-priori position variance of a one-axis nearly-constant-velocity
/// Kalman filter (continuous white-noise acceleration of intensity q, position
/// measurement variance r, update interval dt). Closed-form solution of the
/// discrete Riccati equation.
double steady_state_position_variance(double q, double dt, double r);

/// Expected track error (m): RMS predicted position error of the steady-state
/// NCV filter with update interval dt, capped at SystemParams::track_error_cap_m.
/// Returns the cap when the dwell SNR is below the detection floor.
double track_error_model(const TaskConfiguration& config, const Environment& env, double time_since_update_s);

/// Quality record with "track_error" (m) and "quality" = 1 / track_error (1/m).
QualityRecord tracking_quality(const TaskConfiguration& config, const Environment& env, double dt_s);

/// Dwell duration (n_p - 1)/PRF + tau + 2R/c.
double track_task_duration_s(const TaskConfiguration& config, double range_m);

/// Element fraction n_az*n_el / N and timeline fraction T_task / epoch.
ResourceVector tracking_resources(const TaskConfiguration& config, const Environment& env);

/// w = K_t * |v| / (R + K_R), times the type multiplier.
double track_weight(const Environment& env, const UtilityParams& params);

/// u = w * (1 - exp(-beta * q)). Throws std::domain_error for negative q.
double tracking_utility(double quality, const Environment& env, const UtilityParams& params);

}  // namespace qram::models
