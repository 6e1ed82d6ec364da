#pragma once

#include <cmath>

#include "qram/core/task_config.hpp"
#include "qram/models/environment.hpp"

namespace qram::models {

/// Integrated SNR in dB from the radar range equation, calibrated against
/// SystemParams::calibration. Transmit power and gain both scale with the
/// number of active elements, as does the receive aperture, so SNR goes as
/// n_tot^3; coherent integration adds 10*log10(n_p). Includes env.task.loss_db.
double snr_db(const TaskConfiguration& config, const Environment& env);

/// Single-pulse detection threshold (dB) from Albersheim's approximation.
double detection_threshold_db(double false_alarm_rate, double detection_probability);

/// Beamwidth lambda / (n * d) of a uniform line of n elements.
double beamwidth_rad(int n, double wavelength_m, double spacing_m);

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

}  // namespace qram::models
