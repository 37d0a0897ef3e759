#include "eqr/flat_trajectory.hpp"

#include <cmath>
#include <numbers>

namespace eqr {

FlatTrajectory hover_trajectory() {
  return [](double) { return FlatOutput{}; };
}

FlatTrajectory lissajous_trajectory() {
  return [](double t) {
    FlatOutput f;
    f.position = 0.5 * Vec3(std::cos(2.0 * t), std::sin(4.0 * t), 2.0);
    f.velocity = Vec3(-std::sin(2.0 * t), 2.0 * std::cos(4.0 * t), 0.0);
    f.acceleration = Vec3(-2.0 * std::cos(2.0 * t), -8.0 * std::sin(4.0 * t), 0.0);
    f.heading = 0.0;
    return f;
  };
}

AttitudeThrust attitude_from_flat(const FlatOutput& flat, const PhysParams& params) {
  const Vec3 force = -flat.acceleration + params.gravity * kE3 - params.drag * flat.velocity;
  const double thrust = force.norm();
  if (!(thrust > 1e-9)) throw TrajectoryInfeasible("thrust direction vanishes");
  const Vec3 n = force / thrust;

  const Vec3 cross = kE3.cross(n);
  const double theta = std::atan2(cross.norm(), kE3.dot(n));
  if (std::numbers::pi - theta < 1e-9) throw TrajectoryInfeasible("thrust direction points along -e3");

  Mat3 tilt = Mat3::Identity();
  if (theta >= 1e-8) tilt = so3_exp(theta * cross.normalized());
  return {tilt * so3_exp(flat.heading * kE3), thrust};
}

TrajectorySample flat_to_sample(const FlatTrajectory& trajectory, double t, const PhysParams& params) {
  const FlatOutput flat = trajectory(t);
  const AttitudeThrust now = attitude_from_flat(flat, params);

  const double h = kAttitudeRateStep;
  const Mat3 ahead = attitude_from_flat(trajectory(t + h), params).R;
  const Mat3 behind = attitude_from_flat(trajectory(t - h), params).R;
  const Mat3 rel = now.R.transpose() * (ahead - behind) / (2.0 * h);

  TrajectorySample s;
  s.t = t;
  s.state = {now.R, flat.position, flat.velocity};
  s.input = {vee(rel), now.thrust};
  return s;
}

std::vector<TrajectorySample> sample_trajectory(const FlatTrajectory& trajectory, double dt, int steps,
                                                const PhysParams& params) {
  std::vector<TrajectorySample> out;
  out.reserve(static_cast<std::size_t>(steps) + 1);
  for (int k = 0; k <= steps; ++k) out.push_back(flat_to_sample(trajectory, k * dt, params));
  return out;
}

}  // namespace eqr
