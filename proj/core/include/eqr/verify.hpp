#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "eqr/linearization.hpp"
#include "eqr/rng.hpp"

namespace eqr {

/// Random draws used by the oracle checks.
Mat3 random_rotation(StreamRng& rng, double max_angle = 3.0);
Vec3 random_vec3(StreamRng& rng, double scale = 1.0);
QuadState random_state(StreamRng& rng);
ControlInput random_input(StreamRng& rng);
GroupElement random_element(Symmetry symmetry, StreamRng& rng);

struct CheckResult {
  std::string name;
  bool passed = false;
  double residual = 0.0;   // worst observed value
  double threshold = 0.0;  // residual <= threshold, or >= when `lower_bound`
  bool lower_bound = false;
};

struct OracleOptions {
  PhysParams params;
  std::uint64_t seed = 20240501;
  int lift_samples = 1000;
  int equivariance_samples = 100;
  int group_affine_samples = 100;
  int fd_times = 20;
  /// Closed-form linearisation under test.
  Linearizer linearizer = [](Symmetry s, const TrajectorySample& sample, const PhysParams& p) {
    return linearize(s, sample, p);
  };
};

/// Lift property: TD R_X Lambda(X, u) equals the vector field, all symmetries.
CheckResult check_lift_property(const OracleOptions& options);
/// Ad_Y Lambda(X, u*) = Lambda(Y X, psi(Y, u*)) for the extended pose-velocity lift.
CheckResult check_equivariance(const OracleOptions& options);
/// Extended pose error dynamics coincide with the group-affine form.
CheckResult check_group_affine(const OracleOptions& options);
/// A stored direct-product configuration breaks the group-affine form.
CheckResult check_direct_product_not_group_affine(const OracleOptions& options);
/// The three closed-form (A, B) pairs coincide at hover.
CheckResult check_hover_identity(const OracleOptions& options);
/// Closed-form (A, B) against numeric_linearize along the Lissajous curve.
CheckResult check_fd_linearization(const OracleOptions& options, Symmetry symmetry);

std::vector<CheckResult> run_oracle_suite(const OracleOptions& options = {});

}  // namespace eqr
