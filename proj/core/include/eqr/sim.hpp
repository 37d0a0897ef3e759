#pragma once

#include <cstdint>
#include <numbers>
#include <optional>
#include <string_view>
#include <vector>

#include "eqr/flat_trajectory.hpp"
#include "eqr/lqr.hpp"
#include "eqr/rng.hpp"

namespace eqr {

enum class TrajectoryKind { Hover, Lissajous };

std::string_view to_string(TrajectoryKind kind);
std::optional<TrajectoryKind> parse_trajectory(std::string_view label);
FlatTrajectory make_trajectory(TrajectoryKind kind);

/// Standard deviations of the initial perturbation (rad, m, m/s).
struct PerturbationStd {
  double rot = 0.8;
  double pos = 0.6;
  double vel = 0.3;

  bool operator==(const PerturbationStd&) const = default;
};

struct SimConfig {
  double dt = 0.01;
  double duration = std::numbers::pi;
  TrajectoryKind trajectory = TrajectoryKind::Hover;
  std::vector<Symmetry> symmetries{kAllSymmetries.begin(), kAllSymmetries.end()};
  int trials = 2000;
  std::uint64_t seed = 1;
  PerturbationStd init_std;
  double process_std = 0.1;
  LqrWeights lqr;
  PhysParams phys;
  bool clamp_thrust = false;  // clamp reconstructed physical thrust at T >= 0

  /// Number of integration steps, ceil(duration / dt).
  int steps() const;

  bool operator==(const SimConfig&) const = default;
};

void validate(const SimConfig& cfg);

/// Attitude-error angle at which a trial is declared diverged (chart exit).
inline constexpr double kChartExitAngle = std::numbers::pi - 1e-6;

class ChartExit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// u = feedforward - K log(E), E = equivariant error of `state` w.r.t. the sample.
/// Throws ChartExit when the attitude error reaches kChartExitAngle.
ControlInput control_step(Symmetry symmetry, const QuadState& state, const TrajectorySample& sample, const Mat49& K,
                          const ControlInput& feedforward);
/// Uses the sample's own input as feedforward.
ControlInput control_step(Symmetry symmetry, const QuadState& state, const TrajectorySample& sample, const Mat49& K);

/// One step with input held constant. `noise` = (n_R, n_x, n_v) are additive
/// rates: R <- R exp(dt (Omega + n_R)^x) exactly; (x, v) by RK4 along that
/// rotation. R is re-projected onto SO(3) afterwards.
QuadState integrate_step(const QuadState& state, const ControlInput& u, const Vec9& noise, double dt,
                         const PhysParams& params);

/// R0 = R_d exp(eta_R^x), x0 = x_d + eta_x, v0 = v_d + eta_v with independent
/// zero-mean Gaussian components. Draws rot, pos, vel in that order.
QuadState perturb_initial(const QuadState& desired, const PerturbationStd& stds, StreamRng& rng);

/// Symmetry-neutral squared error terms.
struct TrackingError {
  double att_sq = 0.0;
  double pos_sq = 0.0;
  double vel_sq = 0.0;
  double total_sq() const { return att_sq + pos_sq + vel_sq; }
};
TrackingError tracking_error(const QuadState& desired, const QuadState& actual);

struct StepRecord {
  double t = 0.0;
  double err_att_sq = 0.0;
  double err_pos_sq = 0.0;
  double err_vel_sq = 0.0;
  double err_total_sq = 0.0;
  double omega_dev_norm = 0.0;  // ||Omega - Omega_ff||
  double thrust_dev = 0.0;      // |T_bar - T_bar_ff|
};

struct TrialLog {
  int trial = 0;
  Symmetry symmetry = Symmetry::DirectProduct;
  std::vector<StepRecord> records;
  bool diverged = false;
  std::uint64_t stream_fingerprint = 0;
  double max_orthogonality_error = 0.0;

  /// sqrt(mean total squared error); +inf for diverged trials.
  double rmse() const;
};

/// Desired samples at t_k = k dt plus the feedforward held over [t_k, t_k+1).
struct Reference {
  std::vector<TrajectorySample> samples;
  std::vector<ControlInput> hold;
};

/// The held feedforward is the flat input at the interval midpoint, which
/// keeps the sampled-data tracking error second order in dt.
Reference build_reference(const SimConfig& cfg);

TrialLog run_trial(const SimConfig& cfg, Symmetry symmetry, int trial_index, const Reference& reference,
                   const GainSchedule& gains);
/// Convenience overload that builds the reference and gain schedule.
TrialLog run_trial(const SimConfig& cfg, Symmetry symmetry, int trial_index);

struct SymmetrySummary {
  Symmetry symmetry = Symmetry::DirectProduct;
  std::vector<double> t;
  std::vector<double> p05, p50, p95;  // total squared error across trials
  std::vector<double> rmse;           // per trial, in trial order
  double rmse_p20 = 0.0, rmse_p50 = 0.0, rmse_p80 = 0.0;
  int diverged = 0;
};

struct CampaignResult {
  std::vector<SymmetrySummary> summaries;  // in cfg.symmetries order
  std::vector<TrialLog> logs;              // grouped by symmetry, then trial
};

/// Linear interpolation between order statistics at rank p/100 * (n - 1).
/// +inf entries sort last; an interpolation touching +inf yields +inf.
double percentile(std::vector<double> values, double p);

/// `threads` = 0 picks std::thread::hardware_concurrency(). Output does not
/// depend on the thread count.
CampaignResult run_campaign(const SimConfig& cfg, unsigned threads = 0);

/// Summary statistics from completed logs (all belonging to `symmetry`).
SymmetrySummary summarize(Symmetry symmetry, const std::vector<const TrialLog*>& logs, int steps, double dt);

}  // namespace eqr
