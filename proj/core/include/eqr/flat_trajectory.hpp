#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "eqr/quad_model.hpp"

namespace eqr {

/// Flat outputs (position, heading) with analytic position derivatives.
struct FlatOutput {
  Vec3 position = Vec3::Zero();
  Vec3 velocity = Vec3::Zero();
  Vec3 acceleration = Vec3::Zero();
  double heading = 0.0;  // rad
};

using FlatTrajectory = std::function<FlatOutput(double t)>;

/// x_d(t) = 0, heading 0.
FlatTrajectory hover_trajectory();
/// x_d(t) = 0.5 (cos 2t, sin 4t, 2), heading 0.
FlatTrajectory lissajous_trajectory();

struct TrajectorySample {
  double t = 0.0;
  QuadState state;
  ControlInput input;
};

class TrajectoryInfeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Step used to differentiate R_d(t) when extracting Omega_d.
inline constexpr double kAttitudeRateStep = 1e-5;

/// Attitude and compensated thrust from a flat output. The thrust direction
/// R_d e3 is aligned with -x_dd + g e3 - c1 v_d by a minimal tilt applied after
/// the heading rotation about e3.
struct AttitudeThrust {
  Mat3 R;
  double thrust;
};
AttitudeThrust attitude_from_flat(const FlatOutput& flat, const PhysParams& params);

/// Full desired state and feedforward input at time t. Omega_d comes from a
/// central difference of R_d with step kAttitudeRateStep.
TrajectorySample flat_to_sample(const FlatTrajectory& trajectory, double t, const PhysParams& params);

/// Samples at t_k = k dt for k = 0..steps.
std::vector<TrajectorySample> sample_trajectory(const FlatTrajectory& trajectory, double dt, int steps,
                                                const PhysParams& params);

}  // namespace eqr
