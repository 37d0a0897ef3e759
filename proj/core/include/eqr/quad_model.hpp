#pragma once

#include "eqr/lie.hpp"

namespace eqr {

/// Physical constants. Thrust inputs elsewhere are mass-normalised, so `mass`
/// only enters the conversion between physical and compensated thrust.
struct PhysParams {
  double mass = 1.0;      // kg
  double gravity = 9.81;  // m/s^2
  double drag = 0.25;     // c1, 1/s

  bool operator==(const PhysParams&) const = default;
};

void validate(const PhysParams& params);

inline const Vec3 kE3 = Vec3::UnitZ();

/// Point on the torsor SO(3) x R^3 x R^3; velocity stored in the inertial frame.
struct QuadState {
  Mat3 R = Mat3::Identity();
  Vec3 x = Vec3::Zero();
  Vec3 v = Vec3::Zero();

  Vec3 body_velocity() const { return R.transpose() * v; }
  static QuadState from_body(const Mat3& R, const Vec3& x, const Vec3& v_body) { return {R, x, R * v_body}; }
};

/// Body angular velocity and compensated thrust (m/s^2).
struct ControlInput {
  Vec3 omega = Vec3::Zero();
  double thrust = 0.0;

  Vec4 as_vector() const {
    Vec4 u;
    u << omega, thrust;
    return u;
  }
  static ControlInput from_vector(const Vec4& u) { return {u.head<3>(), u(3)}; }
};

struct StateDerivative {
  Mat3 R_dot = Mat3::Zero();
  Vec3 x_dot = Vec3::Zero();
  Vec3 v_dot = Vec3::Zero();
};

/// Raw rigid-body model with rotor-plane drag D = c1 (I - e3 e3^T) and
/// physical thrust `thrust` in newtons.
StateDerivative dynamics_raw(const QuadState& state, const Vec3& omega, double thrust, const PhysParams& params);

/// T_bar = T/m - c1 e3^T R^T v
double compensate_thrust(double thrust, const Mat3& R, const Vec3& v, const PhysParams& params);
/// Inverse of compensate_thrust for fixed (R, v).
double physical_thrust(double compensated, const Mat3& R, const Vec3& v, const PhysParams& params);

/// Compensated-thrust model: (R Omega^x, v, -T_bar R e3 + g e3 - c1 v).
StateDerivative dynamics_bar(const QuadState& state, const ControlInput& u, const PhysParams& params);
/// Body-frame velocity rate: -Omega^x v_b - T_bar e3 + g R^T e3 - c1 v_b.
Vec3 body_velocity_rate(const QuadState& state, const ControlInput& u, const PhysParams& params);

/// Group element identified with a state. The pose-velocity symmetry carries
/// the body velocity in its third factor; the others carry inertial velocity.
GroupElement to_group(Symmetry symmetry, const QuadState& state);
QuadState from_group(const GroupElement& X);

/// The vector field written in the coordinates of `to_group(symmetry, .)`.
GroupTangent torsor_dynamics(Symmetry symmetry, const QuadState& state, const ControlInput& u,
                             const PhysParams& params);

/// System lift: right-translating the result by to_group(symmetry, state)
/// reproduces torsor_dynamics.
AlgebraVector lift(Symmetry symmetry, const QuadState& state, const ControlInput& u, const PhysParams& params);
/// Same lift, with the state given as its identified group element.
AlgebraVector lift(const GroupElement& X, const ControlInput& u, const PhysParams& params);

/// E = X_d^{-1} X written out explicitly per symmetry.
GroupElement equivariant_error(Symmetry symmetry, const QuadState& desired, const QuadState& actual);

// ---------------------------------------------------------------------------
// Extended input for the pose-velocity symmetry
// ---------------------------------------------------------------------------

struct ExtendedInput {
  Vec3 omega = Vec3::Zero();
  Vec3 thrust = Vec3::Zero();   // T_bar*
  Vec3 gravity = Vec3::Zero();  // g*
  Vec3 wind = Vec3::Zero();     // w

  /// The physical system: w = 0, T_bar* = T_bar e3, g* = g e3.
  static ExtendedInput from_input(const ControlInput& u, const PhysParams& params) {
    return {u.omega, u.thrust * kE3, params.gravity * kE3, Vec3::Zero()};
  }
};

/// Extended lift on SE(3) x R^3. `X` must be a pose-velocity element.
AlgebraVector extended_lift(const GroupElement& X, const ExtendedInput& u, const PhysParams& params);

/// psi_Y: (Omega, T*, g*, w) -> (Omega, T*, Q_Y g*, w + gamma_Y).
ExtendedInput input_action(const GroupElement& Y, const ExtendedInput& u);

// ---------------------------------------------------------------------------
// Error dynamics
// ---------------------------------------------------------------------------

/// Time derivative of E = X_d^{-1} X for X = X_d E:
///   E_dot = TD R_E Ad_{X_d^{-1}} [Lambda(X_d E, u) - Lambda(X_d, u_d)].
/// Evaluated through the matrix embedding of the group.
GroupTangent error_derivative(const GroupElement& desired, const GroupElement& error, const ControlInput& u,
                              const ControlInput& u_desired, const PhysParams& params);

/// The right-trivialised velocity of E, i.e. the bracketed algebra element above.
AlgebraVector error_velocity(const GroupElement& desired, const GroupElement& error, const ControlInput& u,
                             const ControlInput& u_desired, const PhysParams& params);

/// Group-affine form TD R_E [Lambda(E, u) - Lambda(I, u_d)].
GroupTangent group_affine_error_derivative(const GroupElement& error, const ControlInput& u,
                                           const ControlInput& u_desired, const PhysParams& params);

}  // namespace eqr
