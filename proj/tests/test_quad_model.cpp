#include <gtest/gtest.h>

#include "eqr/quad_model.hpp"
#include "eqr/verify.hpp"

using namespace eqr;

namespace {

double max_abs(const Eigen::MatrixXd& M) { return M.cwiseAbs().maxCoeff(); }

double tangent_distance(const GroupTangent& a, const GroupTangent& b) {
  return std::max({max_abs(a.dQ - b.dQ), max_abs(a.dp - b.dp), max_abs(a.dgamma - b.dgamma)});
}

double element_distance(const GroupElement& a, const GroupElement& b) {
  return std::max({max_abs(a.Q - b.Q), max_abs(a.p - b.p), max_abs(a.gamma - b.gamma)});
}

const PhysParams kParams;

}  // namespace

TEST(PhysParams, Validation) {
  EXPECT_NO_THROW(validate(kParams));
  EXPECT_THROW(validate(PhysParams{0.0, 9.81, 0.25}), std::invalid_argument);
  EXPECT_THROW(validate(PhysParams{1.0, -1.0, 0.25}), std::invalid_argument);
  EXPECT_THROW(validate(PhysParams{1.0, 9.81, -0.1}), std::invalid_argument);
}

TEST(Dynamics, HoverEquilibrium) {
  const QuadState s;
  const StateDerivative raw = dynamics_raw(s, Vec3::Zero(), kParams.mass * kParams.gravity, kParams);
  EXPECT_EQ(raw.R_dot, Mat3::Zero());
  EXPECT_EQ(raw.x_dot, Vec3::Zero());
  EXPECT_LT(raw.v_dot.norm(), 1e-15);
  const StateDerivative bar = dynamics_bar(s, {Vec3::Zero(), kParams.gravity}, kParams);
  EXPECT_LT(bar.v_dot.norm(), 1e-15);
}

TEST(Dynamics, DragVanishesAlongBodyAxis) {
  const QuadState s{Mat3::Identity(), Vec3::Zero(), Vec3(0.0, 0.0, 2.0)};
  const StateDerivative d = dynamics_raw(s, Vec3::Zero(), 0.0, kParams);
  EXPECT_LT((d.v_dot - kParams.gravity * kE3).norm(), 1e-15);
}

TEST(Dynamics, CompensatedThrustValue) {
  EXPECT_DOUBLE_EQ(compensate_thrust(10.0, Mat3::Identity(), Vec3(0.0, 0.0, 1.0), kParams), 9.75);
  EXPECT_DOUBLE_EQ(compensate_thrust(7.0, Mat3::Identity(), Vec3::Zero(), PhysParams{2.0, 9.81, 0.25}), 3.5);
}

TEST(Dynamics, CompensatedThrustRoundTrip) {
  StreamRng rng(1, 0, 1);
  const PhysParams p{1.7, 9.81, 0.25};
  for (int i = 0; i < 100; ++i) {
    const QuadState s = random_state(rng);
    const double T = 20.0 * rng.uniform();
    EXPECT_NEAR(physical_thrust(compensate_thrust(T, s.R, s.v, p), s.R, s.v, p), T, 1e-12);
  }
}

TEST(Dynamics, DragExample) {
  const QuadState s{Mat3::Identity(), Vec3::Zero(), Vec3(1.0, 0.0, 0.0)};
  const StateDerivative d = dynamics_bar(s, {Vec3::Zero(), 9.81}, kParams);
  EXPECT_LT((d.v_dot - Vec3(-0.25, 0.0, 0.0)).norm(), 1e-15);
}

TEST(Dynamics, RawEqualsCompensatedForm) {
  StreamRng rng(2, 0, 1);
  const PhysParams p{1.3, 9.81, 0.25};
  for (int i = 0; i < 100; ++i) {
    const QuadState s = random_state(rng);
    const Vec3 omega = random_vec3(rng);
    const double T = 15.0 * rng.uniform();
    const StateDerivative raw = dynamics_raw(s, omega, T, p);
    const StateDerivative bar = dynamics_bar(s, {omega, compensate_thrust(T, s.R, s.v, p)}, p);
    EXPECT_LT(max_abs(raw.R_dot - bar.R_dot), 1e-12);
    EXPECT_LT(max_abs(raw.v_dot - bar.v_dot), 1e-12);
  }
}

TEST(Dynamics, BodyVelocityAgreesWithInertial) {
  StreamRng rng(3, 0, 1);
  for (int i = 0; i < 100; ++i) {
    const QuadState s = random_state(rng);
    const ControlInput u = random_input(rng);
    const StateDerivative d = dynamics_bar(s, u, kParams);
    // v = R v_b  =>  v_dot = R Omega^x v_b + R v_b_dot
    const Vec3 chain = s.R * skew(u.omega) * s.body_velocity() + s.R * body_velocity_rate(s, u, kParams);
    EXPECT_LT((chain - d.v_dot).norm(), 1e-12);
  }
}

TEST(Dynamics, BodyVelocityView) {
  StreamRng rng(4, 0, 1);
  const QuadState s = random_state(rng);
  EXPECT_LT((s.R * s.body_velocity() - s.v).norm(), 1e-12);
  const QuadState t = QuadState::from_body(s.R, s.x, s.body_velocity());
  EXPECT_LT((t.v - s.v).norm(), 1e-12);
}

class LiftTest : public ::testing::TestWithParam<Symmetry> {};

TEST_P(LiftTest, LiftAtIdentityIsTheVectorField) {
  const Symmetry sym = GetParam();
  const ControlInput u{Vec3(0.1, -0.2, 0.3), 8.0};
  const QuadState s;
  const AlgebraVector L = lift(sym, s, u, kParams);
  const StateDerivative d = dynamics_bar(s, u, kParams);
  EXPECT_LT((L.rot() - vee(d.R_dot)).norm(), 1e-15);
  EXPECT_LT((L.pos() - d.x_dot).norm(), 1e-15);
  EXPECT_LT((L.vel() - d.v_dot).norm(), 1e-15);
}

TEST_P(LiftTest, RightTranslatedLiftReproducesDynamics) {
  const Symmetry sym = GetParam();
  StreamRng rng(5, 0, 1);
  for (int i = 0; i < 100; ++i) {
    const QuadState s = random_state(rng);
    const ControlInput u = random_input(rng);
    const GroupElement X = to_group(sym, s);
    // Independent route: dX/dt = Lambda^ X in the matrix embedding.
    const GroupTangent via_matrix = tangent_from_embedding(sym, embed(lift(sym, s, u, kParams)) * embed(X));
    EXPECT_LT(tangent_distance(via_matrix, torsor_dynamics(sym, s, u, kParams)), 1e-10);
    EXPECT_LT(max_abs(lift(X, u, kParams).coords - lift(sym, s, u, kParams).coords), 1e-15);
  }
}

TEST_P(LiftTest, RotationalPartIsConjugatedRate) {
  const Symmetry sym = GetParam();
  StreamRng rng(6, 0, 1);
  const QuadState s = random_state(rng);
  const ControlInput u = random_input(rng);
  const Mat3 W = skew(lift(sym, s, u, kParams).rot());
  EXPECT_LT(max_abs(W - s.R * skew(u.omega) * s.R.transpose()), 1e-12);
  EXPECT_LT(max_abs(W + W.transpose()), 1e-15);
}

TEST_P(LiftTest, EquivariantErrorMatchesGroupProduct) {
  const Symmetry sym = GetParam();
  StreamRng rng(7, 0, 1);
  for (int i = 0; i < 50; ++i) {
    const QuadState d = random_state(rng);
    const QuadState s = random_state(rng);
    const GroupElement expected = compose(inverse(to_group(sym, d)), to_group(sym, s));
    EXPECT_LT(element_distance(equivariant_error(sym, d, s), expected), 1e-12);
  }
  const QuadState d = random_state(rng);
  EXPECT_LT(element_distance(equivariant_error(sym, d, d), GroupElement::identity(sym)), 1e-12);
}

INSTANTIATE_TEST_SUITE_P(AllSymmetries, LiftTest, ::testing::ValuesIn(kAllSymmetries),
                         [](const auto& info) { return std::string(to_string(info.param)); });

TEST(EquivariantError, ExplicitForms) {
  StreamRng rng(8, 0, 1);
  const QuadState d = random_state(rng);
  const QuadState s = random_state(rng);
  const Mat3 RdT = d.R.transpose();

  const GroupElement dp = equivariant_error(Symmetry::DirectProduct, d, s);
  EXPECT_LT(max_abs(dp.p - (s.x - d.x)), 1e-12);
  EXPECT_LT(max_abs(dp.gamma - (s.v - d.v)), 1e-12);

  const GroupElement ep = equivariant_error(Symmetry::ExtendedPose, d, s);
  EXPECT_LT(max_abs(ep.Q - RdT * s.R), 1e-12);
  EXPECT_LT(max_abs(ep.p - RdT * (s.x - d.x)), 1e-12);
  EXPECT_LT(max_abs(ep.gamma - RdT * (s.v - d.v)), 1e-12);

  const GroupElement pv = equivariant_error(Symmetry::PoseVelocity, d, s);
  EXPECT_LT(max_abs(pv.p - RdT * (s.x - d.x)), 1e-12);
  EXPECT_LT(max_abs(pv.gamma - (s.body_velocity() - d.body_velocity())), 1e-12);
}

TEST(EquivariantError, DirectProductWithEqualAttitude) {
  const QuadState d{so3_exp(Vec3(0.2, 0.1, 0.0)), Vec3(1.0, 2.0, 3.0), Vec3(0.1, 0.0, 0.0)};
  QuadState s = d;
  s.x += Vec3(0.3, 0.0, 0.0);
  s.v += Vec3(0.0, -0.5, 0.0);
  const GroupElement E = equivariant_error(Symmetry::DirectProduct, d, s);
  EXPECT_LT(max_abs(E.Q - Mat3::Identity()), 1e-15);
  EXPECT_LT((E.p - Vec3(0.3, 0.0, 0.0)).norm(), 1e-15);
  EXPECT_LT((E.gamma - Vec3(0.0, -0.5, 0.0)).norm(), 1e-15);
}

// --- extended input ---------------------------------------------------------

TEST(ExtendedLift, ReducesToPhysicalLift) {
  StreamRng rng(9, 0, 1);
  for (int i = 0; i < 50; ++i) {
    const QuadState s = random_state(rng);
    const ControlInput u = random_input(rng);
    const GroupElement X = to_group(Symmetry::PoseVelocity, s);
    const Vec9 a = extended_lift(X, ExtendedInput::from_input(u, kParams), kParams).coords;
    const Vec9 b = lift(Symmetry::PoseVelocity, s, u, kParams).coords;
    EXPECT_LT(max_abs(a - b), 1e-12);
  }
}

TEST(ExtendedLift, Equivariance) {
  StreamRng rng(10, 0, 1);
  for (int i = 0; i < 100; ++i) {
    const GroupElement X = random_element(Symmetry::PoseVelocity, rng);
    const GroupElement Y = random_element(Symmetry::PoseVelocity, rng);
    const ExtendedInput u{random_vec3(rng), random_vec3(rng, 5.0), random_vec3(rng, 5.0), random_vec3(rng)};
    const Vec9 lhs = adjoint(Y, extended_lift(X, u, kParams)).coords;
    const Vec9 rhs = extended_lift(compose(Y, X), input_action(Y, u), kParams).coords;
    EXPECT_LT(max_abs(lhs - rhs), 1e-10);
  }
}

TEST(ExtendedLift, InputActionIsAGroupAction) {
  StreamRng rng(11, 0, 1);
  const GroupElement Y = random_element(Symmetry::PoseVelocity, rng);
  const GroupElement Z = random_element(Symmetry::PoseVelocity, rng);
  const ExtendedInput u{random_vec3(rng), random_vec3(rng), random_vec3(rng), random_vec3(rng)};

  const ExtendedInput id = input_action(GroupElement::identity(Symmetry::PoseVelocity), u);
  EXPECT_EQ(id.gravity, u.gravity);
  EXPECT_EQ(id.wind, u.wind);

  const ExtendedInput a = input_action(Y, input_action(Z, u));
  const ExtendedInput b = input_action(compose(Y, Z), u);
  EXPECT_LT((a.omega - b.omega).norm(), 1e-12);
  EXPECT_LT((a.thrust - b.thrust).norm(), 1e-12);
  EXPECT_LT((a.gravity - b.gravity).norm(), 1e-12);
  EXPECT_LT((a.wind - b.wind).norm(), 1e-12);
}

TEST(ExtendedLift, RejectsOtherSymmetries) {
  EXPECT_THROW(extended_lift(GroupElement::identity(Symmetry::ExtendedPose), {}, kParams), std::invalid_argument);
  EXPECT_THROW(input_action(GroupElement::identity(Symmetry::DirectProduct), {}), std::invalid_argument);
}

// --- error dynamics -----------------------------------------------------------

TEST(ErrorDynamics, MatchesDifferentiatedError) {
  // E(t) = X_d(t)^{-1} X(t) with both trajectories propagated by their own
  // vector fields; compare a central difference against error_derivative.
  StreamRng rng(12, 0, 1);
  const double h = 1e-6;
  for (Symmetry sym : kAllSymmetries) {
    const QuadState d = random_state(rng);
    const QuadState s = random_state(rng);
    const ControlInput ud = random_input(rng);
    const ControlInput u = random_input(rng);
    auto flow = [&](const QuadState& q, const ControlInput& in, double dt) {
      const GroupElement X = to_group(sym, q);
      return from_group(compose(group_exp(AlgebraVector(sym, Vec9(dt * lift(X, in, kParams).coords))), X));
    };
    auto error_at = [&](double dt) { return equivariant_error(sym, flow(d, ud, dt), flow(s, u, dt)); };
    const GroupElement plus = error_at(h);
    const GroupElement minus = error_at(-h);
    const GroupTangent fd{(plus.Q - minus.Q) / (2 * h), (plus.p - minus.p) / (2 * h),
                          (plus.gamma - minus.gamma) / (2 * h)};
    const GroupElement Xd = to_group(sym, d);
    const GroupElement E = equivariant_error(sym, d, s);
    EXPECT_LT(tangent_distance(error_derivative(Xd, E, u, ud, kParams), fd), 1e-6) << to_string(sym);
  }
}

TEST(ErrorDynamics, ExtendedPoseIsGroupAffine) {
  StreamRng rng(13, 0, 1);
  for (int i = 0; i < 100; ++i) {
    const GroupElement Xd = random_element(Symmetry::ExtendedPose, rng);
    const GroupElement E = random_element(Symmetry::ExtendedPose, rng);
    const ControlInput u = random_input(rng);
    const ControlInput ud = random_input(rng);
    EXPECT_LT(tangent_distance(error_derivative(Xd, E, u, ud, kParams),
                               group_affine_error_derivative(E, u, ud, kParams)),
              1e-10);
  }
}

TEST(ErrorDynamics, DirectProductIsNotGroupAffine) {
  const OracleOptions o;
  const CheckResult r = check_direct_product_not_group_affine(o);
  EXPECT_TRUE(r.passed);
  EXPECT_GT(r.residual, 1e-3);
}

TEST(ErrorDynamics, VanishesOnTheReference) {
  StreamRng rng(14, 0, 1);
  for (Symmetry sym : kAllSymmetries) {
    const GroupElement Xd = random_element(sym, rng);
    const ControlInput u = random_input(rng);
    const GroupTangent d = error_derivative(Xd, GroupElement::identity(sym), u, u, kParams);
    EXPECT_LT(max_abs(d.dQ) + max_abs(d.dp) + max_abs(d.dgamma), 1e-12);
  }
}
