#include "eqr/linearization.hpp"

namespace eqr {

namespace {

LinearizedSystem common_blocks(const TrajectorySample& s) {
  LinearizedSystem lin;
  lin.t = s.t;
  lin.A.block<3, 3>(0, 0) = -skew(s.input.omega);
  lin.A.block<3, 3>(3, 6).setIdentity();
  lin.B.block<3, 3>(0, 0).setIdentity();
  return lin;
}

}  // namespace

LinearizedSystem linearize_direct_product(const TrajectorySample& s, const PhysParams& params) {
  LinearizedSystem lin = common_blocks(s);
  const Mat3& Rd = s.state.R;
  lin.A.block<3, 3>(6, 0) = s.input.thrust * Rd * skew(kE3);
  lin.A.block<3, 3>(6, 6) = -params.drag * Mat3::Identity();
  lin.B.block<3, 1>(6, 3) = -Rd * kE3;
  return lin;
}

LinearizedSystem linearize_extended_pose(const TrajectorySample& s, const PhysParams& params) {
  LinearizedSystem lin = common_blocks(s);
  const Mat3 Wd = skew(s.input.omega);
  lin.A.block<3, 3>(3, 3) = -Wd;
  lin.A.block<3, 3>(6, 0) = s.input.thrust * skew(kE3);
  lin.A.block<3, 3>(6, 6) = -Wd - params.drag * Mat3::Identity();
  lin.B.block<3, 1>(6, 3) = -kE3;
  return lin;
}

LinearizedSystem linearize_pose_velocity(const TrajectorySample& s, const PhysParams& params) {
  LinearizedSystem lin = common_blocks(s);
  const Mat3 Wd = skew(s.input.omega);
  const Mat3 Vbd = skew(s.state.body_velocity());
  lin.A.block<3, 3>(3, 0) = -Vbd;
  lin.A.block<3, 3>(3, 3) = -Wd;
  lin.A.block<3, 3>(6, 0) = params.gravity * skew(s.state.R.transpose() * kE3);
  lin.A.block<3, 3>(6, 6) = -Wd - params.drag * Mat3::Identity();
  lin.B.block<3, 3>(6, 0) = Vbd;
  lin.B.block<3, 1>(6, 3) = -kE3;
  return lin;
}

LinearizedSystem linearize(Symmetry symmetry, const TrajectorySample& s, const PhysParams& params) {
  switch (symmetry) {
    case Symmetry::DirectProduct:
      return linearize_direct_product(s, params);
    case Symmetry::ExtendedPose:
      return linearize_extended_pose(s, params);
    case Symmetry::PoseVelocity:
      return linearize_pose_velocity(s, params);
  }
  return {};
}

Mat9 log_rate_matrix(const GroupElement& E, double flow_step) {
  Mat9 J;
  for (int k = 0; k < 9; ++k) {
    const AlgebraVector dir{E.symmetry, Vec9::Unit(k) * flow_step};
    const AlgebraVector dir_neg{E.symmetry, -dir.coords};
    const Vec9 ahead = group_log(compose(group_exp(dir), E)).coords;
    const Vec9 behind = group_log(compose(group_exp(dir_neg), E)).coords;
    J.col(k) = (ahead - behind) / (2.0 * flow_step);
  }
  return J;
}

Vec9 error_coordinate_rate(Symmetry symmetry, const TrajectorySample& s, const Vec9& eps, const Vec4& u_tilde,
                           const PhysParams& params) {
  const GroupElement Xd = to_group(symmetry, s.state);
  const GroupElement E = group_exp({symmetry, eps});
  const ControlInput u = ControlInput::from_vector(s.input.as_vector() + u_tilde);
  const AlgebraVector xi = error_velocity(Xd, E, u, s.input, params);
  return log_rate_matrix(E) * xi.coords;
}

LinearizedSystem numeric_linearize(Symmetry symmetry, const TrajectorySample& s, const PhysParams& params,
                                   double step) {
  LinearizedSystem lin;
  lin.t = s.t;
  for (int j = 0; j < 9; ++j) {
    const Vec9 d = Vec9::Unit(j) * step;
    lin.A.col(j) = (error_coordinate_rate(symmetry, s, d, Vec4::Zero(), params) -
                    error_coordinate_rate(symmetry, s, -d, Vec4::Zero(), params)) /
                   (2.0 * step);
  }
  for (int j = 0; j < 4; ++j) {
    const Vec4 d = Vec4::Unit(j) * step;
    lin.B.col(j) = (error_coordinate_rate(symmetry, s, Vec9::Zero(), d, params) -
                    error_coordinate_rate(symmetry, s, Vec9::Zero(), -d, params)) /
                   (2.0 * step);
  }
  return lin;
}

}  // namespace eqr
