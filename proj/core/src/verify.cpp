#include "eqr/verify.hpp"

#include <algorithm>
#include <numbers>

namespace eqr {

Vec3 random_vec3(StreamRng& rng, double scale) {
  return scale * Vec3(rng.normal(), rng.normal(), rng.normal());
}

Mat3 random_rotation(StreamRng& rng, double max_angle) {
  const Vec3 axis = random_vec3(rng).normalized();
  return so3_exp(max_angle * rng.uniform() * axis);
}

QuadState random_state(StreamRng& rng) {
  return {random_rotation(rng), random_vec3(rng, 2.0), random_vec3(rng, 1.5)};
}

ControlInput random_input(StreamRng& rng) {
  return {random_vec3(rng, 1.0), 9.81 + 3.0 * rng.normal()};
}

GroupElement random_element(Symmetry symmetry, StreamRng& rng) {
  return {symmetry, random_rotation(rng), random_vec3(rng, 2.0), random_vec3(rng, 1.5)};
}

namespace {

double tangent_distance(const GroupTangent& a, const GroupTangent& b) {
  return std::max({(a.dQ - b.dQ).cwiseAbs().maxCoeff(), (a.dp - b.dp).cwiseAbs().maxCoeff(),
                   (a.dgamma - b.dgamma).cwiseAbs().maxCoeff()});
}

CheckResult upper(std::string name, double residual, double threshold) {
  return {std::move(name), residual <= threshold, residual, threshold, false};
}

}  // namespace

CheckResult check_lift_property(const OracleOptions& o) {
  StreamRng rng(o.seed, 0, 101);
  double worst = 0.0;
  for (int i = 0; i < o.lift_samples; ++i) {
    const QuadState s = random_state(rng);
    const ControlInput u = random_input(rng);
    for (Symmetry sym : kAllSymmetries) {
      const GroupElement X = to_group(sym, s);
      const GroupTangent lifted = right_translate(X, lift(X, u, o.params));
      worst = std::max(worst, tangent_distance(lifted, torsor_dynamics(sym, s, u, o.params)));
    }
  }
  return upper("lift property", worst, 1e-10);
}

CheckResult check_equivariance(const OracleOptions& o) {
  StreamRng rng(o.seed, 0, 102);
  double worst = 0.0;
  for (int i = 0; i < o.equivariance_samples; ++i) {
    const GroupElement X = random_element(Symmetry::PoseVelocity, rng);
    const GroupElement Y = random_element(Symmetry::PoseVelocity, rng);
    const ExtendedInput u{random_vec3(rng), random_vec3(rng, 5.0), random_vec3(rng, 5.0), random_vec3(rng)};
    const Vec9 lhs = adjoint(Y, extended_lift(X, u, o.params)).coords;
    const Vec9 rhs = extended_lift(compose(Y, X), input_action(Y, u), o.params).coords;
    worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
  }
  return upper("equivariance (pose-velocity, extended input)", worst, 1e-10);
}

CheckResult check_group_affine(const OracleOptions& o) {
  StreamRng rng(o.seed, 0, 103);
  double worst = 0.0;
  for (int i = 0; i < o.group_affine_samples; ++i) {
    const GroupElement Xd = random_element(Symmetry::ExtendedPose, rng);
    const GroupElement E = random_element(Symmetry::ExtendedPose, rng);
    const ControlInput u = random_input(rng);
    const ControlInput ud = random_input(rng);
    worst = std::max(worst, tangent_distance(error_derivative(Xd, E, u, ud, o.params),
                                             group_affine_error_derivative(E, u, ud, o.params)));
  }
  return upper("group affine (extended pose)", worst, 1e-10);
}

CheckResult check_direct_product_not_group_affine(const OracleOptions& o) {
  constexpr Symmetry dp = Symmetry::DirectProduct;
  const GroupElement Xd{dp, so3_exp(Vec3(0.5, 0.0, 0.0)), Vec3(1.0, 2.0, 3.0), Vec3(0.5, -0.3, 0.2)};
  const GroupElement E{dp, so3_exp(Vec3(0.1, -0.2, 0.3)), Vec3(0.2, 0.1, -0.1), Vec3(0.3, 0.0, 0.1)};
  const ControlInput u{Vec3(0.1, 0.2, -0.1), 9.0};
  const ControlInput ud{Vec3(0.0, 0.1, 0.0), 9.81};
  const double residual =
      tangent_distance(error_derivative(Xd, E, u, ud, o.params), group_affine_error_derivative(E, u, ud, o.params));
  return {"direct product is not group affine", residual > 1e-3, residual, 1e-3, true};
}

CheckResult check_hover_identity(const OracleOptions& o) {
  const TrajectorySample s = flat_to_sample(hover_trajectory(), 0.0, o.params);
  const LinearizedSystem ref = o.linearizer(Symmetry::DirectProduct, s, o.params);
  double worst = 0.0;
  for (Symmetry sym : {Symmetry::ExtendedPose, Symmetry::PoseVelocity}) {
    const LinearizedSystem lin = o.linearizer(sym, s, o.params);
    worst = std::max({worst, (lin.A - ref.A).cwiseAbs().maxCoeff(), (lin.B - ref.B).cwiseAbs().maxCoeff()});
  }
  return upper("hover linearisation identity", worst, 1e-12);
}

CheckResult check_fd_linearization(const OracleOptions& o, Symmetry symmetry) {
  const FlatTrajectory traj = lissajous_trajectory();
  double worst = 0.0;
  for (int i = 0; i < o.fd_times; ++i) {
    const double t = std::numbers::pi * (i + 0.5) / o.fd_times;
    const TrajectorySample s = flat_to_sample(traj, t, o.params);
    const LinearizedSystem closed = o.linearizer(symmetry, s, o.params);
    const LinearizedSystem numeric = numeric_linearize(symmetry, s, o.params);
    worst = std::max({worst, (closed.A - numeric.A).cwiseAbs().maxCoeff(),
                      (closed.B - numeric.B).cwiseAbs().maxCoeff()});
  }
  return upper("finite-difference linearisation (" + std::string(to_string(symmetry)) + ")", worst, 1e-5);
}

std::vector<CheckResult> run_oracle_suite(const OracleOptions& o) {
  std::vector<CheckResult> out;
  out.push_back(check_lift_property(o));
  out.push_back(check_equivariance(o));
  out.push_back(check_group_affine(o));
  out.push_back(check_direct_product_not_group_affine(o));
  out.push_back(check_hover_identity(o));
  for (Symmetry s : kAllSymmetries) out.push_back(check_fd_linearization(o, s));
  return out;
}

}  // namespace eqr
