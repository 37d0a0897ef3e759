#pragma once

#include <functional>

#include "eqr/flat_trajectory.hpp"

namespace eqr {

/// eps_dot = A eps + B u_tilde, eps = (r, x, v) log coordinates of E and
/// u_tilde = (Omega - Omega_d, T_bar - T_bar_d).
struct LinearizedSystem {
  double t = 0.0;
  Mat9 A = Mat9::Zero();
  Mat94 B = Mat94::Zero();
};

LinearizedSystem linearize_direct_product(const TrajectorySample& sample, const PhysParams& params);
LinearizedSystem linearize_extended_pose(const TrajectorySample& sample, const PhysParams& params);
LinearizedSystem linearize_pose_velocity(const TrajectorySample& sample, const PhysParams& params);

/// Closed-form linearisation for the given symmetry.
LinearizedSystem linearize(Symmetry symmetry, const TrajectorySample& sample, const PhysParams& params);

using Linearizer = std::function<LinearizedSystem(Symmetry, const TrajectorySample&, const PhysParams&)>;

// ---------------------------------------------------------------------------
// Finite-difference oracle
// ---------------------------------------------------------------------------

inline constexpr double kOracleStep = 1e-6;      // perturbation of (eps, u_tilde)
inline constexpr double kOracleFlowStep = 1e-5;  // step along the flow of E when differentiating log

/// d/ds log(exp(s U) E) at s = 0 for each basis direction U; maps a
/// right-trivialised velocity of E to the rate of its log coordinates.
Mat9 log_rate_matrix(const GroupElement& E, double flow_step = kOracleFlowStep);

/// eps_dot(eps, u_tilde) evaluated without linearising: E = exp(eps),
/// E_dot from the error-dynamics identity, mapped through log_rate_matrix.
Vec9 error_coordinate_rate(Symmetry symmetry, const TrajectorySample& sample, const Vec9& eps, const Vec4& u_tilde,
                           const PhysParams& params);

/// Central differences of error_coordinate_rate around (0, 0).
LinearizedSystem numeric_linearize(Symmetry symmetry, const TrajectorySample& sample, const PhysParams& params,
                                   double step = kOracleStep);

}  // namespace eqr
