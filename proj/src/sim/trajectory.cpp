#include "qram/sim/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qram::sim {

Trajectory::Trajectory(Vec3 start, std::vector<Leg> legs) : start_(std::move(start)), legs_(std::move(legs)) {
  for (const auto& leg : legs_) {
    if (leg.duration_s < 0.0) throw std::invalid_argument("leg duration must be nonnegative");
  }
}

Vec3 Trajectory::position(double t) const {
  Vec3 p = start_;
  double remaining = t;
  for (std::size_t i = 0; i < legs_.size(); ++i) {
    const bool last = i + 1 == legs_.size();
    const double dt = last ? remaining : std::min(remaining, legs_[i].duration_s);
    p += legs_[i].velocity * dt;
    remaining -= dt;
    if (remaining <= 0.0) break;
  }
  return p;
}

Vec3 Trajectory::velocity(double t) const {
  double elapsed = 0.0;
  for (std::size_t i = 0; i < legs_.size(); ++i) {
    elapsed += legs_[i].duration_s;
    if (t < elapsed || i + 1 == legs_.size()) return legs_[i].velocity;
  }
  return Vec3::Zero();
}

TruthState::TruthState(Trajectory nominal, double q) : nominal_(std::move(nominal)), q_(q) {
  if (q < 0.0) throw std::invalid_argument("process noise must be nonnegative");
}

void TruthState::advance(double dt, std::mt19937_64& rng) {
  if (dt < 0.0) throw std::invalid_argument("time step must be nonnegative");
  std::normal_distribution<double> normal;
  // Cholesky factor of q * [[dt^3/3, dt^2/2], [dt^2/2, dt]]
  const double l11 = std::sqrt(q_ * dt * dt * dt / 3.0);
  const double l21 = std::sqrt(3.0 * q_ * dt) / 2.0;
  const double l22 = std::sqrt(q_ * dt) / 2.0;
  for (int axis = 0; axis < 3; ++axis) {
    // draw both values unconditionally so every entity consumes the same stream
    const double a = normal(rng);
    const double b = normal(rng);
    dp_[axis] += dv_[axis] * dt + l11 * a;
    dv_[axis] += l21 * a + l22 * b;
  }
  t_ += dt;
}

Geometry relative_geometry(const Vec3& observer_pos, const Vec3& observer_vel, const Vec3& object_pos,
                           const Vec3& object_vel) {
  const Vec3 d = object_pos - observer_pos;
  const Vec3 v = object_vel - observer_vel;
  Geometry g;
  g.range_m = d.norm();
  if (g.range_m <= 0.0) return g;
  g.radial_velocity_mps = d.dot(v) / g.range_m;
  g.azimuth_rad = std::atan2(d.x(), d.y());
  g.elevation_rad = std::asin(std::clamp(d.z() / g.range_m, -1.0, 1.0));
  return g;
}

}  // namespace qram::sim
