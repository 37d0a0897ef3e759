#include "eqr/lqr.hpp"

#include <cmath>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

namespace eqr {

Mat9 LqrWeights::state_cost() const {
  Mat9 Q = Mat9::Zero();
  Q.block<3, 3>(0, 0) = q_rot;
  Q.block<3, 3>(3, 3) = q_pos;
  Q.block<3, 3>(6, 6) = q_vel;
  return Q;
}

Mat4 LqrWeights::input_cost() const {
  Mat4 R = Mat4::Zero();
  R.block<3, 3>(0, 0) = r_omega;
  R(3, 3) = r_thrust;
  return R;
}

namespace {

void require_spd(const Mat3& m, const char* name) {
  if ((m - m.transpose()).norm() > 1e-12 * (1.0 + m.norm())) {
    throw std::invalid_argument(std::string(name) + " must be symmetric");
  }
  Eigen::LLT<Mat3> llt(m);
  if (llt.info() != Eigen::Success) throw std::invalid_argument(std::string(name) + " must be positive definite");
}

}  // namespace

void validate(const LqrWeights& w) {
  require_spd(w.q_rot, "q_r");
  require_spd(w.q_pos, "q_x");
  require_spd(w.q_vel, "q_v");
  require_spd(w.r_omega, "r_omega");
  if (!(w.r_thrust > 0.0)) throw std::invalid_argument("r_thrust must be positive");
}

Eigen::MatrixXd matrix_exponential(const Eigen::MatrixXd& M) {
  const Eigen::Index n = M.rows();
  const double norm = M.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const Eigen::MatrixXd S = M / std::ldexp(1.0, squarings);

  constexpr int kOrder = 12;
  Eigen::MatrixXd result = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd term = Eigen::MatrixXd::Identity(n, n);
  for (int k = 1; k <= kOrder; ++k) {
    term = term * S / static_cast<double>(k);
    result += term;
  }
  for (int i = 0; i < squarings; ++i) result = result * result;
  return result;
}

DiscreteSystem discretize(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("discretize: dt must be positive");
  if (A.rows() != A.cols() || B.rows() != A.rows()) throw std::invalid_argument("discretize: shape mismatch");
  const Eigen::Index n = A.rows();
  const Eigen::Index m = B.cols();

  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n + m, n + m);
  M.topLeftCorner(n, n) = A * dt;
  M.topRightCorner(n, m) = B * dt;
  const Eigen::MatrixXd phi = matrix_exponential(M);
  return {phi.topLeftCorner(n, n), phi.topRightCorner(n, m)};
}

namespace {

Eigen::MatrixXd riccati_step(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, const Eigen::MatrixXd& Q,
                             const Eigen::MatrixXd& R, const Eigen::MatrixXd& P) {
  const Eigen::MatrixXd PA = P * A;
  const Eigen::MatrixXd BtPA = B.transpose() * PA;
  const Eigen::MatrixXd S = R + B.transpose() * P * B;
  Eigen::MatrixXd next = Q + A.transpose() * PA - BtPA.transpose() * S.ldlt().solve(BtPA);
  return 0.5 * (next + next.transpose());
}

Eigen::MatrixXd gain_from(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, const Eigen::MatrixXd& R,
                          const Eigen::MatrixXd& P) {
  const Eigen::MatrixXd S = R + B.transpose() * P * B;
  return S.ldlt().solve(B.transpose() * P * A);
}

}  // namespace

DareSolution solve_dare(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, const Eigen::MatrixXd& Q,
                        const Eigen::MatrixXd& R, const Eigen::MatrixXd& initial, DareOptions options) {
  Eigen::MatrixXd P = initial.size() == 0 ? Q : initial;
  double residual = 0.0;
  for (int it = 1; it <= options.max_iterations; ++it) {
    Eigen::MatrixXd next = riccati_step(A, B, Q, R, P);
    residual = (next - P).norm();
    P = std::move(next);
    if (!std::isfinite(residual)) break;
    if (residual <= options.tolerance) return {P, gain_from(A, B, R, P), it, residual};
  }
  throw RiccatiError("Riccati iteration did not converge (residual " + std::to_string(residual) + ")", residual);
}

std::vector<double> riccati_residuals(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, const Eigen::MatrixXd& Q,
                                      const Eigen::MatrixXd& R, int iterations) {
  std::vector<double> out;
  Eigen::MatrixXd P = Q;
  for (int it = 0; it < iterations; ++it) {
    Eigen::MatrixXd next = riccati_step(A, B, Q, R, P);
    out.push_back((next - P).norm());
    P = std::move(next);
  }
  return out;
}

double spectral_radius(const Eigen::MatrixXd& M) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(M, false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

GainSchedule schedule_gains(const std::vector<TrajectorySample>& samples, Symmetry symmetry,
                            const LqrWeights& weights, double dt, const PhysParams& params) {
  return schedule_gains(samples, symmetry, weights, dt, params, linearize);
}

GainSchedule schedule_gains(const std::vector<TrajectorySample>& samples, Symmetry symmetry,
                            const LqrWeights& weights, double dt, const PhysParams& params,
                            const Linearizer& linearizer) {
  const Eigen::MatrixXd Q = weights.state_cost();
  const Eigen::MatrixXd R = weights.input_cost();

  GainSchedule schedule;
  schedule.t.reserve(samples.size());
  schedule.K.reserve(samples.size());
  schedule.closed_loop_radius.reserve(samples.size());

  Eigen::MatrixXd warm;
  for (const auto& s : samples) {
    const LinearizedSystem lin = linearizer(symmetry, s, params);
    const DiscreteSystem d = discretize(lin.A, lin.B, dt);
    DareSolution sol;
    try {
      sol = solve_dare(d.A, d.B, Q, R, warm);
    } catch (const RiccatiError& e) {
      throw RiccatiError("gain schedule failed at t = " + std::to_string(s.t) + ": " + e.what(), e.residual());
    }
    warm = sol.P;
    schedule.t.push_back(s.t);
    schedule.K.push_back(sol.K);
    schedule.closed_loop_radius.push_back(spectral_radius(d.A - d.B * sol.K));
  }
  return schedule;
}

}  // namespace eqr
