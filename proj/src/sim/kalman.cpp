#include "qram/sim/kalman.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Cholesky>
#include <Eigen/Geometry>

namespace qram::sim {

NcvKalman::NcvKalman(const Vec6& x, const Mat6& p, double q) : x_(x), p_(p), q_(q) {
  if (q < 0.0) throw std::invalid_argument("process noise must be nonnegative");
}

Mat6 NcvKalman::transition(double dt) {
  Mat6 f = Mat6::Identity();
  f.topRightCorner<3, 3>() = Mat3::Identity() * dt;
  return f;
}

Mat6 NcvKalman::process_noise(double q, double dt) {
  Mat6 n = Mat6::Zero();
  n.topLeftCorner<3, 3>() = Mat3::Identity() * (q * dt * dt * dt / 3.0);
  n.topRightCorner<3, 3>() = Mat3::Identity() * (q * dt * dt / 2.0);
  n.bottomLeftCorner<3, 3>() = Mat3::Identity() * (q * dt * dt / 2.0);
  n.bottomRightCorner<3, 3>() = Mat3::Identity() * (q * dt);
  return n;
}

void NcvKalman::predict(double dt) {
  if (dt < 0.0) throw std::invalid_argument("prediction interval must be nonnegative");
  if (dt == 0.0) return;
  const Mat6 f = transition(dt);
  x_ = f * x_;
  p_ = f * p_ * f.transpose() + process_noise(q_, dt);
  p_ = 0.5 * (p_ + p_.transpose());
}

void NcvKalman::update(const Vec3& z, const Mat3& r) {
  const Mat3 s = p_.topLeftCorner<3, 3>() + r;
  const Eigen::LLT<Mat3> llt(s);
  if (llt.info() != Eigen::Success) throw std::invalid_argument("innovation covariance is not positive definite");
  // K = P H^T S^-1 with H = [I 0]
  const Eigen::Matrix<double, 6, 3> pht = p_.leftCols<3>();
  const Eigen::Matrix<double, 6, 3> k = llt.solve(pht.transpose()).transpose();
  x_ += k * (z - x_.head<3>());
  // Joseph form keeps P symmetric positive definite
  Eigen::Matrix<double, 6, 6> ikh = Mat6::Identity();
  ikh.leftCols<3>() -= k;
  p_ = ikh * p_ * ikh.transpose() + k * r * k.transpose();
  p_ = 0.5 * (p_ + p_.transpose());
}

double NcvKalman::position_rms() const { return std::sqrt(p_.topLeftCorner<3, 3>().trace()); }

double NcvKalman::predicted_position_rms(double dt) const {
  NcvKalman copy = *this;
  copy.predict(dt);
  return copy.position_rms();
}

Mat3 measurement_covariance(const Vec3& observer, const Vec3& target, const models::MeasurementSigmas& sigmas) {
  const Vec3 d = target - observer;
  const double range = d.norm();
  if (range <= 0.0) throw std::invalid_argument("target coincides with the observer");
  const Vec3 ur = d / range;
  Vec3 ua = Vec3::UnitZ().cross(ur);
  if (ua.norm() < 1e-9) ua = Vec3::UnitX();  // looking straight up or down
  ua.normalize();
  const Vec3 ue = ur.cross(ua);
  return sigmas.range_m * sigmas.range_m * ur * ur.transpose() +
         sigmas.azimuth_m * sigmas.azimuth_m * ua * ua.transpose() +
         sigmas.elevation_m * sigmas.elevation_m * ue * ue.transpose();
}

}  // namespace qram::sim
