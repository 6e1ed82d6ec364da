#pragma once

#include <random>
#include <vector>

#include <Eigen/Core>

namespace qram::sim {

using Vec3 = Eigen::Vector3d;

/// Straight constant-velocity segment.
struct Leg {
  double duration_s = 0.0;
  Vec3 velocity = Vec3::Zero();
};

/// Piecewise-linear nominal path in local east-north-up coordinates. After the
/// last leg the entity keeps its last velocity.
class Trajectory {
 public:
  Trajectory() = default;
  Trajectory(Vec3 start, std::vector<Leg> legs);

  [[nodiscard]] Vec3 position(double t) const;
  [[nodiscard]] Vec3 velocity(double t) const;
  [[nodiscard]] const Vec3& start() const { return start_; }

 private:
  Vec3 start_ = Vec3::Zero();
  std::vector<Leg> legs_;
};

/// Nominal trajectory plus a nearly-constant-velocity random deviation driven
/// by white acceleration noise of intensity q (m^2/s^3 per axis).
class TruthState {
 public:
  TruthState() = default;
  TruthState(Trajectory nominal, double q);

  /// Advances by dt, drawing the deviation increment exactly from the
  /// discretized process.
  void advance(double dt, std::mt19937_64& rng);

  [[nodiscard]] double time() const { return t_; }
  [[nodiscard]] Vec3 position() const { return nominal_.position(t_) + dp_; }
  [[nodiscard]] Vec3 velocity() const { return nominal_.velocity(t_) + dv_; }

 private:
  Trajectory nominal_;
  double q_ = 0.0;
  double t_ = 0.0;
  Vec3 dp_ = Vec3::Zero();
  Vec3 dv_ = Vec3::Zero();
};

/// Line-of-sight geometry from an observer to an object.
struct Geometry {
  double range_m = 0.0;
  double radial_velocity_mps = 0.0;  ///< positive when opening
  double azimuth_rad = 0.0;          ///< from north, clockwise
  double elevation_rad = 0.0;
};

Geometry relative_geometry(const Vec3& observer_pos, const Vec3& observer_vel, const Vec3& object_pos,
                           const Vec3& object_vel);

}  // namespace qram::sim
