#include "eqr/lie.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/SVD>

namespace eqr {

std::string_view to_string(Symmetry symmetry) {
  switch (symmetry) {
    case Symmetry::DirectProduct:
      return "dp";
    case Symmetry::ExtendedPose:
      return "se23";
    case Symmetry::PoseVelocity:
      return "se3r3";
  }
  return "unknown";
}

std::optional<Symmetry> parse_symmetry(std::string_view label) {
  for (auto s : kAllSymmetries) {
    if (to_string(s) == label) return s;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// SO(3)
// ---------------------------------------------------------------------------

Mat3 skew(const Vec3& a) {
  Mat3 m;
  m << 0.0, -a.z(), a.y(),
       a.z(), 0.0, -a.x(),
       -a.y(), a.x(), 0.0;
  return m;
}

Vec3 vee(const Mat3& m) {
  return 0.5 * Vec3(m(2, 1) - m(1, 2), m(0, 2) - m(2, 0), m(1, 0) - m(0, 1));
}

namespace {

// sin(t)/t
double sinc(double t) {
  if (t < kSmallAngle) {
    const double t2 = t * t;
    return 1.0 - t2 / 6.0 + t2 * t2 / 120.0;
  }
  return std::sin(t) / t;
}

// (1 - cos t)/t^2
double cosc(double t) {
  if (t < kSmallAngle) {
    const double t2 = t * t;
    return 0.5 - t2 / 24.0 + t2 * t2 / 720.0;
  }
  const double s = std::sin(0.5 * t);
  return 2.0 * s * s / (t * t);
}

// (t - sin t)/t^3
double sinc3(double t) {
  if (t < kSmallAngle) {
    const double t2 = t * t;
    return 1.0 / 6.0 - t2 / 120.0 + t2 * t2 / 5040.0;
  }
  return (t - std::sin(t)) / (t * t * t);
}

// (1 - (t/2) cot(t/2)) / t^2, the W^2 coefficient of the inverse left Jacobian
double inv_jac_coeff(double t) {
  if (t < kSmallAngle) {
    const double t2 = t * t;
    return 1.0 / 12.0 + t2 / 720.0 + t2 * t2 / 30240.0;
  }
  const double half = 0.5 * t;
  return (1.0 - half * std::cos(half) / std::sin(half)) / (t * t);
}

}  // namespace

Mat3 so3_exp(const Vec3& w) {
  const double theta = w.norm();
  const Mat3 W = skew(w);
  return Mat3::Identity() + sinc(theta) * W + cosc(theta) * W * W;
}

double rotation_angle(const Mat3& R) {
  const double c = 0.5 * (R.trace() - 1.0);
  const double s = Vec3(R(2, 1) - R(1, 2), R(0, 2) - R(2, 0), R(1, 0) - R(0, 1)).norm() * 0.5;
  return std::atan2(s, c);
}

Vec3 so3_log(const Mat3& R) {
  const Vec3 axis_sin = vee(R);  // sin(theta) * axis
  const double c = 0.5 * (R.trace() - 1.0);
  const double theta = std::atan2(axis_sin.norm(), c);

  if (std::numbers::pi - theta < kLogChartMargin) {
    throw ChartError("so3_log: rotation angle is pi, axis is ambiguous");
  }
  if (theta < kSmallAngle) {
    const double t2 = theta * theta;
    return (1.0 + t2 / 6.0 + 7.0 * t2 * t2 / 360.0) * axis_sin;
  }
  if (c < -0.9) {
    // Near pi the antisymmetric part is small; read the axis from the
    // symmetric part (1 - c) a a^T and take the sign from vee(R).
    const Mat3 S = 0.5 * (R + R.transpose()) - c * Mat3::Identity();
    Eigen::Index k = 0;
    S.diagonal().maxCoeff(&k);
    Vec3 axis = S.col(k).normalized();
    if (axis.dot(axis_sin) < 0.0) axis = -axis;
    return theta * axis;
  }
  return (theta / std::sin(theta)) * axis_sin;
}

Mat3 so3_left_jacobian(const Vec3& w) {
  const double theta = w.norm();
  const Mat3 W = skew(w);
  return Mat3::Identity() + cosc(theta) * W + sinc3(theta) * W * W;
}

Mat3 so3_left_jacobian_inverse(const Vec3& w) {
  const double theta = w.norm();
  const Mat3 W = skew(w);
  return Mat3::Identity() - 0.5 * W + inv_jac_coeff(theta) * W * W;
}

Mat3 project_to_so3(const Mat3& M) {
  Eigen::JacobiSVD<Mat3> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat3 U = svd.matrixU();
  const Mat3 V = svd.matrixV();
  if ((U * V.transpose()).determinant() < 0.0) U.col(2) = -U.col(2);
  return U * V.transpose();
}

double orthogonality_error(const Mat3& R) {
  return (R.transpose() * R - Mat3::Identity()).norm();
}

// ---------------------------------------------------------------------------
// Torsor groups
// ---------------------------------------------------------------------------

namespace {

void require_same(Symmetry a, Symmetry b, const char* what) {
  if (a != b) {
    throw std::invalid_argument(std::string(what) + ": mixed symmetries (" +
                                std::string(to_string(a)) + " vs " + std::string(to_string(b)) + ")");
  }
}

}  // namespace

GroupElement compose(const GroupElement& a, const GroupElement& b) {
  require_same(a.symmetry, b.symmetry, "compose");
  GroupElement out{a.symmetry, a.Q * b.Q, {}, {}};
  switch (a.symmetry) {
    case Symmetry::DirectProduct:
      out.p = a.p + b.p;
      out.gamma = a.gamma + b.gamma;
      break;
    case Symmetry::ExtendedPose:
      out.p = a.Q * b.p + a.p;
      out.gamma = a.Q * b.gamma + a.gamma;
      break;
    case Symmetry::PoseVelocity:
      out.p = a.Q * b.p + a.p;
      out.gamma = a.gamma + b.gamma;
      break;
  }
  return out;
}

GroupElement inverse(const GroupElement& a) {
  const Mat3 Qt = a.Q.transpose();
  switch (a.symmetry) {
    case Symmetry::DirectProduct:
      return {a.symmetry, Qt, -a.p, -a.gamma};
    case Symmetry::ExtendedPose:
      return {a.symmetry, Qt, -Qt * a.p, -Qt * a.gamma};
    case Symmetry::PoseVelocity:
      return {a.symmetry, Qt, -Qt * a.p, -a.gamma};
  }
  return a;
}

GroupElement group_exp(const AlgebraVector& v) {
  const Vec3 r = v.rot();
  GroupElement out{v.symmetry, so3_exp(r), v.pos(), v.vel()};
  if (v.symmetry == Symmetry::DirectProduct) return out;

  const Mat3 J = so3_left_jacobian(r);
  out.p = J * v.pos();
  if (v.symmetry == Symmetry::ExtendedPose) out.gamma = J * v.vel();
  return out;
}

AlgebraVector group_log(const GroupElement& X) {
  const Vec3 r = so3_log(X.Q);
  if (X.symmetry == Symmetry::DirectProduct) return {X.symmetry, r, X.p, X.gamma};

  const Mat3 Jinv = so3_left_jacobian_inverse(r);
  const Vec3 vel = X.symmetry == Symmetry::ExtendedPose ? Vec3(Jinv * X.gamma) : X.gamma;
  return {X.symmetry, r, Jinv * X.p, vel};
}

Mat9 adjoint_matrix(const GroupElement& X) {
  Mat9 Ad = Mat9::Zero();
  Ad.block<3, 3>(0, 0) = X.Q;
  switch (X.symmetry) {
    case Symmetry::DirectProduct:
      Ad.block<3, 3>(3, 3).setIdentity();
      Ad.block<3, 3>(6, 6).setIdentity();
      break;
    case Symmetry::ExtendedPose:
      Ad.block<3, 3>(3, 0) = skew(X.p) * X.Q;
      Ad.block<3, 3>(3, 3) = X.Q;
      Ad.block<3, 3>(6, 0) = skew(X.gamma) * X.Q;
      Ad.block<3, 3>(6, 6) = X.Q;
      break;
    case Symmetry::PoseVelocity:
      Ad.block<3, 3>(3, 0) = skew(X.p) * X.Q;
      Ad.block<3, 3>(3, 3) = X.Q;
      Ad.block<3, 3>(6, 6).setIdentity();
      break;
  }
  return Ad;
}

AlgebraVector adjoint(const GroupElement& X, const AlgebraVector& v) {
  require_same(X.symmetry, v.symmetry, "adjoint");
  return {X.symmetry, adjoint_matrix(X) * v.coords};
}

GroupTangent right_translate(const GroupElement& X, const AlgebraVector& v) {
  require_same(X.symmetry, v.symmetry, "right_translate");
  const Mat3 W = skew(v.rot());
  GroupTangent out{W * X.Q, v.pos(), v.vel()};
  if (X.symmetry != Symmetry::DirectProduct) out.dp += W * X.p;
  if (X.symmetry == Symmetry::ExtendedPose) out.dgamma += W * X.gamma;
  return out;
}

// ---------------------------------------------------------------------------
// Matrix embeddings
// ---------------------------------------------------------------------------

namespace {

struct Layout {
  int size;
  int p_row, p_col;
  int g_row, g_col;
};

Layout layout(Symmetry s) {
  switch (s) {
    case Symmetry::DirectProduct:
      return {11, 3, 6, 7, 10};
    case Symmetry::ExtendedPose:
      return {5, 0, 3, 0, 4};
    case Symmetry::PoseVelocity:
      return {8, 0, 3, 4, 7};
  }
  return {0, 0, 0, 0, 0};
}

}  // namespace

Eigen::MatrixXd embed(const GroupElement& X) {
  const Layout l = layout(X.symmetry);
  Eigen::MatrixXd M = Eigen::MatrixXd::Identity(l.size, l.size);
  M.block<3, 3>(0, 0) = X.Q;
  M.block<3, 1>(l.p_row, l.p_col) = X.p;
  M.block<3, 1>(l.g_row, l.g_col) = X.gamma;
  return M;
}

Eigen::MatrixXd embed(const AlgebraVector& v) {
  const Layout l = layout(v.symmetry);
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(l.size, l.size);
  M.block<3, 3>(0, 0) = skew(v.rot());
  M.block<3, 1>(l.p_row, l.p_col) = v.pos();
  M.block<3, 1>(l.g_row, l.g_col) = v.vel();
  return M;
}

GroupElement element_from_embedding(Symmetry symmetry, const Eigen::MatrixXd& M) {
  const Layout l = layout(symmetry);
  return {symmetry, M.block<3, 3>(0, 0), M.block<3, 1>(l.p_row, l.p_col), M.block<3, 1>(l.g_row, l.g_col)};
}

AlgebraVector algebra_from_embedding(Symmetry symmetry, const Eigen::MatrixXd& M) {
  const Layout l = layout(symmetry);
  return {symmetry, vee(M.block<3, 3>(0, 0)), M.block<3, 1>(l.p_row, l.p_col), M.block<3, 1>(l.g_row, l.g_col)};
}

GroupTangent tangent_from_embedding(Symmetry symmetry, const Eigen::MatrixXd& dX) {
  const Layout l = layout(symmetry);
  return {dX.block<3, 3>(0, 0), dX.block<3, 1>(l.p_row, l.p_col), dX.block<3, 1>(l.g_row, l.g_col)};
}

}  // namespace eqr
