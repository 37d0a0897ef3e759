#include "eqr/quad_model.hpp"

#include <cmath>
#include <stdexcept>

namespace eqr {

void validate(const PhysParams& params) {
  if (!(params.mass > 0.0)) throw std::invalid_argument("mass must be positive");
  if (!(params.gravity > 0.0)) throw std::invalid_argument("gravity must be positive");
  if (!(params.drag >= 0.0)) throw std::invalid_argument("drag must be non-negative");
}

StateDerivative dynamics_raw(const QuadState& s, const Vec3& omega, double thrust, const PhysParams& params) {
  const Mat3 D = params.drag * (Mat3::Identity() - kE3 * kE3.transpose());
  return {s.R * skew(omega), s.v,
          -(thrust / params.mass) * s.R * kE3 + params.gravity * kE3 - s.R * D * s.R.transpose() * s.v};
}

double compensate_thrust(double thrust, const Mat3& R, const Vec3& v, const PhysParams& params) {
  return thrust / params.mass - params.drag * kE3.dot(R.transpose() * v);
}

double physical_thrust(double compensated, const Mat3& R, const Vec3& v, const PhysParams& params) {
  return params.mass * (compensated + params.drag * kE3.dot(R.transpose() * v));
}

StateDerivative dynamics_bar(const QuadState& s, const ControlInput& u, const PhysParams& params) {
  return {s.R * skew(u.omega), s.v, -u.thrust * s.R * kE3 + params.gravity * kE3 - params.drag * s.v};
}

Vec3 body_velocity_rate(const QuadState& s, const ControlInput& u, const PhysParams& params) {
  const Vec3 vb = s.body_velocity();
  return -u.omega.cross(vb) - u.thrust * kE3 + params.gravity * s.R.transpose() * kE3 - params.drag * vb;
}

GroupElement to_group(Symmetry symmetry, const QuadState& s) {
  const Vec3 gamma = symmetry == Symmetry::PoseVelocity ? s.body_velocity() : s.v;
  return {symmetry, s.R, s.x, gamma};
}

QuadState from_group(const GroupElement& X) {
  if (X.symmetry == Symmetry::PoseVelocity) return QuadState::from_body(X.Q, X.p, X.gamma);
  return {X.Q, X.p, X.gamma};
}

GroupTangent torsor_dynamics(Symmetry symmetry, const QuadState& s, const ControlInput& u, const PhysParams& params) {
  const StateDerivative d = dynamics_bar(s, u, params);
  const Vec3 dgamma = symmetry == Symmetry::PoseVelocity ? body_velocity_rate(s, u, params) : d.v_dot;
  return {d.R_dot, d.x_dot, dgamma};
}

AlgebraVector lift(const GroupElement& X, const ControlInput& u, const PhysParams& params) {
  const Mat3& R = X.Q;
  const Vec3& x = X.p;
  const double g = params.gravity;
  const double c1 = params.drag;
  const Vec3 w = R * u.omega;  // vee(R Omega^x R^T)

  switch (X.symmetry) {
    case Symmetry::DirectProduct: {
      const Vec3& v = X.gamma;
      return {X.symmetry, w, v, -u.thrust * R * kE3 + g * kE3 - c1 * v};
    }
    case Symmetry::ExtendedPose: {
      const Vec3& v = X.gamma;
      return {X.symmetry, w, -w.cross(x) + v, -w.cross(v) - u.thrust * R * kE3 + g * kE3 - c1 * v};
    }
    case Symmetry::PoseVelocity: {
      const Vec3& vb = X.gamma;
      return {X.symmetry, w, -w.cross(x) + R * vb,
              -u.omega.cross(vb) - u.thrust * kE3 + g * R.transpose() * kE3 - c1 * vb};
    }
  }
  return {};
}

AlgebraVector lift(Symmetry symmetry, const QuadState& s, const ControlInput& u, const PhysParams& params) {
  return lift(to_group(symmetry, s), u, params);
}

GroupElement equivariant_error(Symmetry symmetry, const QuadState& d, const QuadState& s) {
  const Mat3 Rdt = d.R.transpose();
  switch (symmetry) {
    case Symmetry::DirectProduct:
      return {symmetry, Rdt * s.R, s.x - d.x, s.v - d.v};
    case Symmetry::ExtendedPose:
      return {symmetry, Rdt * s.R, Rdt * (s.x - d.x), Rdt * (s.v - d.v)};
    case Symmetry::PoseVelocity:
      return {symmetry, Rdt * s.R, Rdt * (s.x - d.x), s.body_velocity() - d.body_velocity()};
  }
  return {};
}

AlgebraVector extended_lift(const GroupElement& X, const ExtendedInput& u, const PhysParams& params) {
  if (X.symmetry != Symmetry::PoseVelocity) {
    throw std::invalid_argument("extended_lift: requires a pose-velocity group element");
  }
  const Mat3& R = X.Q;
  const Vec3 w = R * u.omega;
  const Vec3 rel = X.gamma - u.wind;
  return {X.symmetry, w, -w.cross(X.p) + R * rel,
          -u.omega.cross(rel) - u.thrust + R.transpose() * u.gravity - params.drag * rel};
}

ExtendedInput input_action(const GroupElement& Y, const ExtendedInput& u) {
  if (Y.symmetry != Symmetry::PoseVelocity) {
    throw std::invalid_argument("input_action: requires a pose-velocity group element");
  }
  return {u.omega, u.thrust, Y.Q * u.gravity, u.wind + Y.gamma};
}

AlgebraVector error_velocity(const GroupElement& Xd, const GroupElement& E, const ControlInput& u,
                             const ControlInput& ud, const PhysParams& params) {
  const Eigen::MatrixXd Xd_m = embed(Xd);
  const Eigen::MatrixXd Xd_inv_m = embed(inverse(Xd));
  const GroupElement X = element_from_embedding(Xd.symmetry, Xd_m * embed(E));
  const AlgebraVector diff{Xd.symmetry, lift(X, u, params).coords - lift(Xd, ud, params).coords};
  // Ad_{X_d^{-1}} U = X_d^{-1} U X_d
  return algebra_from_embedding(Xd.symmetry, Xd_inv_m * embed(diff) * Xd_m);
}

GroupTangent error_derivative(const GroupElement& Xd, const GroupElement& E, const ControlInput& u,
                              const ControlInput& ud, const PhysParams& params) {
  const AlgebraVector xi = error_velocity(Xd, E, u, ud, params);
  return tangent_from_embedding(E.symmetry, embed(xi) * embed(E));
}

GroupTangent group_affine_error_derivative(const GroupElement& E, const ControlInput& u, const ControlInput& ud,
                                           const PhysParams& params) {
  const AlgebraVector diff{
      E.symmetry, lift(E, u, params).coords - lift(GroupElement::identity(E.symmetry), ud, params).coords};
  return tangent_from_embedding(E.symmetry, embed(diff) * embed(E));
}

}  // namespace eqr
