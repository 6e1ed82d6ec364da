#pragma once

#include <Eigen/Core>

#include "qram/models/tracking.hpp"
#include "qram/sim/trajectory.hpp"

namespace qram::sim {

using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using Mat3 = Eigen::Matrix3d;

/// Nearly-constant-velocity Kalman filter on [position; velocity] in 3D with
/// isotropic white acceleration noise.
class NcvKalman {
 public:
  NcvKalman() = default;
  NcvKalman(const Vec6& x, const Mat6& p, double q);

  void predict(double dt);
  /// Position measurement z with covariance r (must be positive definite).
  void update(const Vec3& z, const Mat3& r);

  [[nodiscard]] const Vec6& state() const { return x_; }
  [[nodiscard]] const Mat6& covariance() const { return p_; }
  [[nodiscard]] Vec3 position() const { return x_.head<3>(); }
  /// sqrt(trace) of the position covariance.
  [[nodiscard]] double position_rms() const;
  /// position_rms after predicting dt ahead, without changing the filter.
  [[nodiscard]] double predicted_position_rms(double dt) const;

  static Mat6 transition(double dt);
  static Mat6 process_noise(double q, double dt);

 private:
  Vec6 x_ = Vec6::Zero();
  Mat6 p_ = Mat6::Identity();
  double q_ = 0.0;
};

/// Cartesian covariance of a measurement with the given range / cross-range
/// sigmas along the line of sight from observer to target.
Mat3 measurement_covariance(const Vec3& observer, const Vec3& target, const models::MeasurementSigmas& sigmas);

}  // namespace qram::sim
