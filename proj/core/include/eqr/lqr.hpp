#pragma once

#include <stdexcept>
#include <vector>

#include <Eigen/Core>

#include "eqr/linearization.hpp"

namespace eqr {

/// State cost blocks in eps order (r, x, v) and input cost blocks in
/// u_tilde order (Omega, T_bar).
struct LqrWeights {
  Mat3 q_rot = 1.0 * Mat3::Identity();
  Mat3 q_pos = 2.0 * Mat3::Identity();
  Mat3 q_vel = 0.1 * Mat3::Identity();
  Mat3 r_omega = 0.5 * Mat3::Identity();
  double r_thrust = 0.5;

  Mat9 state_cost() const;
  Mat4 input_cost() const;

  bool operator==(const LqrWeights&) const = default;
};

/// Throws std::invalid_argument unless every block is symmetric positive definite.
void validate(const LqrWeights& weights);

struct DiscreteSystem {
  Eigen::MatrixXd A;
  Eigen::MatrixXd B;
};

/// exp(M) by scaling and squaring around a degree-12 Taylor polynomial.
Eigen::MatrixXd matrix_exponential(const Eigen::MatrixXd& M);

/// Zero-order-hold discretisation through the augmented matrix
/// exp([[A, B], [0, 0]] dt) = [[A_d, B_d], [0, I]].
DiscreteSystem discretize(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, double dt);

class RiccatiError : public std::runtime_error {
 public:
  RiccatiError(const std::string& what, double residual) : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

struct DareSolution {
  Eigen::MatrixXd P;
  Eigen::MatrixXd K;  // u = -K x
  int iterations = 0;
  double residual = 0.0;  // ||P_{k+1} - P_k||_F at exit
};

struct DareOptions {
  double tolerance = 1e-10;
  int max_iterations = 10000;
};

/// Fixed point of P <- Q + A'PA - A'PB (R + B'PB)^{-1} B'PA, started from
/// `initial` (Q when empty). Throws RiccatiError if the iteration does not
/// reach the tolerance.
DareSolution solve_dare(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, const Eigen::MatrixXd& Q,
                        const Eigen::MatrixXd& R, const Eigen::MatrixXd& initial = {}, DareOptions options = {});

/// Residual history of the plain Riccati iteration from P0 = Q.
std::vector<double> riccati_residuals(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, const Eigen::MatrixXd& Q,
                                      const Eigen::MatrixXd& R, int iterations);

double spectral_radius(const Eigen::MatrixXd& M);

struct GainSchedule {
  std::vector<double> t;
  std::vector<Mat49> K;
  std::vector<double> closed_loop_radius;
};

/// Frozen-time design: at each sample, linearise (closed form), discretise
/// with step dt, and solve the DARE. Each solve is warm-started from the
/// previous sample's P; the fixed point is unchanged.
GainSchedule schedule_gains(const std::vector<TrajectorySample>& samples, Symmetry symmetry,
                            const LqrWeights& weights, double dt, const PhysParams& params);

/// Same as above with an injected linearisation routine.
GainSchedule schedule_gains(const std::vector<TrajectorySample>& samples, Symmetry symmetry,
                            const LqrWeights& weights, double dt, const PhysParams& params,
                            const Linearizer& linearizer);

}  // namespace eqr
