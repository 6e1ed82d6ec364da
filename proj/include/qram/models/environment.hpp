#pragma once

namespace qram::models {

inline constexpr double kSpeedOfLight = 2.99792458e8;  // m/s

enum class EmconLevel { None, Bravo };

/// Reference point of the radar range equation. A configuration equal to the
/// reference, evaluated at the reference range, yields exactly reference_snr_db.
struct SnrCalibration {
  double reference_snr_db = 20.0;
  double range_m = 50e3;
  int elements = 256;
  int n_pulses = 16;
  double pulse_width_s = 10e-6;
  double wavelength_m = 0.03;
  double rcs_m2 = 5.0;
  double element_power_w = 10.0;
  double element_gain = 1.0;
  double noise_temperature_k = 500.0;
};

/// Environmental parameters coming from the system itself.
struct SystemParams {
  int n_az_max = 16;
  int n_el_max = 16;
  double element_spacing_m = 0.015;
  double duty_limit = 0.25;
  double noise_temperature_k = 500.0;
  double element_power_w = 10.0;
  double element_gain = 1.0;
  double epoch_s = 1.0;
  double snr_floor_db = 10.0;          ///< below this a dwell yields no usable measurement
  double track_error_cap_m = 6000.0;   ///< expected/realized track error saturates here
  SnrCalibration calibration;

  [[nodiscard]] int total_elements() const { return n_az_max * n_el_max; }
};

/// Environmental parameters defined by mission control.
struct MissionParams {
  double false_alarm_rate = 1e-6;
  double detection_probability = 0.9;
  double volume_sr = 0.5;  ///< search volume of interest
  EmconLevel emcon = EmconLevel::None;
};

/// Environmental parameters that depend on the target or task.
struct TaskEnvironment {
  double range_m = 1.0;
  double radial_velocity_mps = 0.0;
  double priority = 1.0;        ///< K_t
  double process_noise = 1.0;   ///< q_s, m^2/s^3
  double rcs_m2 = 1.0;
  double loss_db = 0.0;         ///< clutter / jamming margin
  double azimuth_rad = 0.0;
  double elevation_rad = 0.0;
  /// Expected track error one epoch ahead if the task is not executed now.
  /// Zero means no running track: tracking utility is then w(1 - exp(-beta q)) with no baseline.
  double coast_error_m = 0.0;
};

struct Environment {
  SystemParams system;
  MissionParams mission;
  TaskEnvironment task;

  /// Throws std::invalid_argument on R <= 0, duty limit outside (0, 1] or K_t <= 0.
  void validate() const;
};

}  // namespace qram::models
