#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string_view>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace eqr {

using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Matrix<double, 4, 1>;
using Vec9 = Eigen::Matrix<double, 9, 1>;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;
using Mat9 = Eigen::Matrix<double, 9, 9>;
using Mat94 = Eigen::Matrix<double, 9, 4>;
using Mat49 = Eigen::Matrix<double, 4, 9>;

/// The three group structures carried by the torsor SO(3) x R^3 x R^3.
enum class Symmetry {
  DirectProduct,  ///< SO(3) x R^3 x R^3
  ExtendedPose,   ///< SE_2(3)
  PoseVelocity,   ///< SE(3) x R^3 (velocity in the body frame)
};

inline constexpr std::array<Symmetry, 3> kAllSymmetries = {
    Symmetry::DirectProduct, Symmetry::ExtendedPose, Symmetry::PoseVelocity};

/// Short labels used in CSV output and on the command line: "dp", "se23", "se3r3".
std::string_view to_string(Symmetry symmetry);
std::optional<Symmetry> parse_symmetry(std::string_view label);

/// Raised when a logarithm is requested outside the injectivity domain
/// (rotation angle at or numerically indistinguishable from pi).
class ChartError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// ---------------------------------------------------------------------------
// SO(3)
// ---------------------------------------------------------------------------

/// Below this angle exp/log/Jacobian coefficients use 4th-order Taylor series.
inline constexpr double kSmallAngle = 1e-4;

/// Angular margin from pi inside which so3_log refuses to pick an axis.
inline constexpr double kLogChartMargin = 1e-8;

/// a^x such that skew(a) * b == a.cross(b).
Mat3 skew(const Vec3& a);
/// Inverse of skew(); reads the antisymmetric part of `m`.
Vec3 vee(const Mat3& m);

Mat3 so3_exp(const Vec3& w);
/// Principal logarithm. Throws ChartError when the angle is within
/// kLogChartMargin of pi.
Vec3 so3_log(const Mat3& R);
/// Rotation angle in [0, pi]; never throws.
double rotation_angle(const Mat3& R);

Mat3 so3_left_jacobian(const Vec3& w);
Mat3 so3_left_jacobian_inverse(const Vec3& w);

/// Nearest rotation in Frobenius norm (polar projection).
Mat3 project_to_so3(const Mat3& M);
/// ||R^T R - I||_F
double orthogonality_error(const Mat3& R);

// ---------------------------------------------------------------------------
// Torsor groups
// ---------------------------------------------------------------------------

/// An element (Q, p, gamma) of one of the three groups. The interpretation of
/// the translational parts under composition depends on `symmetry`.
struct GroupElement {
  Symmetry symmetry = Symmetry::DirectProduct;
  Mat3 Q = Mat3::Identity();
  Vec3 p = Vec3::Zero();
  Vec3 gamma = Vec3::Zero();

  static GroupElement identity(Symmetry symmetry) { return {symmetry, Mat3::Identity(), Vec3::Zero(), Vec3::Zero()}; }
};

/// Coordinates (r, a, b) of a Lie algebra element, ordered rotation first.
struct AlgebraVector {
  Symmetry symmetry = Symmetry::DirectProduct;
  Vec9 coords = Vec9::Zero();

  AlgebraVector() = default;
  AlgebraVector(Symmetry s, const Vec9& c) : symmetry(s), coords(c) {}
  AlgebraVector(Symmetry s, const Vec3& rot, const Vec3& pos, const Vec3& vel) : symmetry(s) {
    coords << rot, pos, vel;
  }

  auto rot() const { return coords.segment<3>(0); }
  auto pos() const { return coords.segment<3>(3); }
  auto vel() const { return coords.segment<3>(6); }
};

/// Tangent vector at a group element, written in the (Q, p, gamma) coordinates.
struct GroupTangent {
  Mat3 dQ = Mat3::Zero();
  Vec3 dp = Vec3::Zero();
  Vec3 dgamma = Vec3::Zero();
};

GroupElement compose(const GroupElement& a, const GroupElement& b);
GroupElement inverse(const GroupElement& a);

GroupElement group_exp(const AlgebraVector& v);
AlgebraVector group_log(const GroupElement& X);

/// Ad_X as a 9x9 matrix acting on algebra coordinates.
Mat9 adjoint_matrix(const GroupElement& X);
AlgebraVector adjoint(const GroupElement& X, const AlgebraVector& v);

/// Right translation TD R_X [v] = v^ X, in (Q, p, gamma) coordinates.
GroupTangent right_translate(const GroupElement& X, const AlgebraVector& v);

/// Faithful matrix representation: 11x11 (direct product), 5x5 (extended
/// pose) or 8x8 (pose-velocity).
Eigen::MatrixXd embed(const GroupElement& X);
Eigen::MatrixXd embed(const AlgebraVector& v);
GroupElement element_from_embedding(Symmetry symmetry, const Eigen::MatrixXd& M);
AlgebraVector algebra_from_embedding(Symmetry symmetry, const Eigen::MatrixXd& M);
/// Reads a tangent matrix dX (same shape as embed(X)) back into coordinates.
GroupTangent tangent_from_embedding(Symmetry symmetry, const Eigen::MatrixXd& dX);

}  // namespace eqr
